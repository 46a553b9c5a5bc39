#pragma once

#include <optional>
#include <string>

#include "qswitch/qswitch_core.hpp"

namespace qswitch {

enum class Axis { x, z };

/// Gibbs qubit of H = -(omega/2) sigma_axis. Built from the populations
/// (1 +/- tanh(beta omega / 2)) / 2 directly, so beta may be +infinity
/// (tanh saturates to exactly 1) without any overflowing exponentials.
DensityMatrix thermal_qubit(double beta, double omega, Axis hamiltonian_axis);

/// Parameters of the repeated-collision control-environment coupling.
/// Control and environment qubits share the resonant Hamiltonian
/// H = -(omega/2) sigma_x; each fresh environment qubit couples to the
/// control for a time tau through V = (g/2)(sz sz + sy sy), the
/// excitation-exchange coupling that commutes with H_C + H_E.
struct CollisionParams {
    double omega = 1.0;  // control/environment gap
    double g = 0.1;      // coupling strength
    double tau = 1.0;    // collision duration
    double beta_e = 0.0; // inverse environment temperature; +infinity allowed
    int n = 0;           // collision count
    Matrix h_s;          // system Hamiltonian

    double gtau() const { return g * tau; }

    /// tanh(beta_e omega / 2); exactly 1 at beta_e = +infinity.
    double f_e() const;

    /// Throws InvariantError on hard violations (g tau must stay in
    /// (0, 0.5), beta_e >= 0, Hermitian h_s). Returns a warning when the
    /// weak-collision assumption g tau < 0.25 is stretched.
    std::optional<std::string> validate(Eigen::Index system_dim = -1) const;
};

/// Scalar weights of the definite/indefinite-order blocks after n
/// collisions:
///   b_def^+-  = 1 +/- f_E [1 - cos^{2n}(g tau)],
///   b_indef^+- = +/- cos^{2n}(g tau).
struct BCoefficients {
    double b_def_plus;
    double b_def_minus;
    double b_indef_plus;
    double b_indef_minus;
    double f_e;

    static BCoefficients evaluate(int n, double gtau, double f_e);
};

BCoefficients b_coefficients(const CollisionParams& p);

enum class Provenance { brute_force, analytic };

const char* to_string(Provenance provenance);

/// Joint system-control state after n collisions, tagged with how it was
/// produced. The two provenances must agree within 1e-8 trace distance;
/// that cross-check is the library's central self-test.
struct OpenSwitchState {
    DensityMatrix joint;
    int n = 0;
    Provenance provenance = Provenance::brute_force;
};

/// Switch output for the maximally coherent control |+><+|, packaged as
/// the n = 0 starting point of the brute-force collision chain.
OpenSwitchState initial_open_state(const KrausChannel& m, const KrausChannel& n,
                                   const DensityMatrix& rho_s);

/// Energy bookkeeping of one collision. With the excitation-conserving
/// coupling, delta_control == -delta_environment: pure heat, no work.
struct CollisionEnergy {
    double delta_control = 0.0;
    double delta_environment = 0.0;
};

/// Precomputes the joint propagator exp(-i tau H_tot) and the fresh
/// ancilla state once, for repeated stepping. H_tot is exponentiated
/// exactly through its eigendecomposition (no Trotterization).
class CollisionEngine {
  public:
    CollisionEngine(const CollisionParams& params, Eigen::Index system_dim);

    OpenSwitchState step(const OpenSwitchState& state, CollisionEnergy* energy = nullptr) const;
    OpenSwitchState run(OpenSwitchState state, int collisions,
                        CollisionEnergy* accumulated = nullptr) const;

    const Matrix& propagator() const { return propagator_; }
    const Matrix& control_hamiltonian() const { return h_c_; }

  private:
    Eigen::Index d_s_;
    Matrix propagator_;
    Matrix theta_e_;
    Matrix h_c_;
    Matrix h_e_;
};

/// One exact collision: append a fresh thermal ancilla, evolve the
/// (S, C, E) composite by exp(-i tau H_tot), trace the ancilla out.
OpenSwitchState collide_once(const OpenSwitchState& state, const CollisionParams& p,
                             CollisionEnergy* energy = nullptr);

/// Closed-form joint state after p.n collisions, assembled from the
/// switch decomposition: the coherent control blocks are damped by
/// cos^n(g tau) and rotated by exp(i n tau omega); the diagonal blocks mix
/// toward the thermal control weights at rate cos^{2n}(g tau).
OpenSwitchState analytic_state(const SwitchDecomposition& dec, const CollisionParams& p);

/// Closed-form post-selection after p.n collisions:
///   p(+-) = [b_def^+- + b_indef^+- tr(a_indef)] / 2.
PostSelection post_select_open(const SwitchDecomposition& dec, const CollisionParams& p,
                               Outcome outcome);

/// Brute-force route: project the control of an evolved joint state.
PostSelection post_select_open(const OpenSwitchState& state, Outcome outcome);

} // namespace qswitch
