#include "qswitch/collisions.hpp"

#include <cmath>
#include <string>

namespace qswitch {

namespace {

double real_energy(const Matrix& rho, const Matrix& hamiltonian) {
    return (rho * hamiltonian).trace().real();
}

} // namespace

DensityMatrix thermal_qubit(double beta, double omega, Axis hamiltonian_axis) {
    if (beta < 0.0) {
        throw InvariantError("thermal_qubit: beta must be nonnegative");
    }
    if (omega < 0.0) {
        throw InvariantError("thermal_qubit: omega must be nonnegative");
    }
    const double f = (omega == 0.0) ? 0.0 : std::tanh(0.5 * beta * omega);
    const double ground = 0.5 * (1.0 + f);
    const double excited = 0.5 * (1.0 - f);
    Matrix rho;
    if (hamiltonian_axis == Axis::x) {
        rho = ground * projector(ket_plus()) + excited * projector(ket_minus());
    } else {
        rho = ground * projector(ket_zero()) + excited * projector(ket_one());
    }
    return DensityMatrix::from(std::move(rho));
}

double CollisionParams::f_e() const {
    if (beta_e == 0.0 || omega == 0.0) return 0.0;
    return std::tanh(0.5 * beta_e * omega);
}

std::optional<std::string> CollisionParams::validate(Eigen::Index system_dim) const {
    if (!(omega > 0.0)) throw InvariantError("CollisionParams: omega must be positive");
    if (!(g > 0.0)) throw InvariantError("CollisionParams: g must be positive");
    if (!(tau > 0.0)) throw InvariantError("CollisionParams: tau must be positive");
    if (std::isnan(beta_e) || beta_e < 0.0) {
        throw InvariantError("CollisionParams: beta_e must be nonnegative");
    }
    if (n < 0) throw InvariantError("CollisionParams: n must be nonnegative");
    if (!(gtau() < 0.5)) {
        throw InvariantError("CollisionParams: g*tau = " + std::to_string(gtau()) +
                             " violates the weak-collision bound g*tau < 0.5");
    }
    if (h_s.size() == 0 || h_s.rows() != h_s.cols()) {
        throw InvariantError("CollisionParams: h_s must be a square matrix");
    }
    if (!is_hermitian(h_s, kHermitianLooseTol)) {
        throw InvariantError("CollisionParams: h_s must be Hermitian");
    }
    if (system_dim >= 0 && h_s.rows() != system_dim) {
        throw InvariantError("CollisionParams: h_s dimension does not match the system");
    }
    if (gtau() > 0.25) {
        return "g*tau = " + std::to_string(gtau()) +
               " exceeds 0.25; closed forms assume g*tau << 1";
    }
    return std::nullopt;
}

BCoefficients BCoefficients::evaluate(int n, double gtau, double f_e) {
    const double c2n = std::pow(std::cos(gtau), 2.0 * static_cast<double>(n));
    BCoefficients b;
    if (f_e == 1.0) {
        // Exact zero-temperature branch: writing 1 - (1 - c2n) here would
        // cancel catastrophically once c2n is small, and the shielding
        // identities b_def^- == -b_indef^- must hold to the last bit.
        b.b_def_plus = 2.0 - c2n;
        b.b_def_minus = c2n;
    } else {
        b.b_def_plus = 1.0 + f_e * (1.0 - c2n);
        b.b_def_minus = 1.0 - f_e * (1.0 - c2n);
    }
    b.b_indef_plus = c2n;
    b.b_indef_minus = -c2n;
    b.f_e = f_e;
    return b;
}

BCoefficients b_coefficients(const CollisionParams& p) {
    if (!(p.omega > 0.0)) throw InvariantError("b_coefficients: omega must be positive");
    if (!(p.g > 0.0 && p.tau > 0.0 && p.gtau() < 0.5)) {
        throw InvariantError("b_coefficients: g*tau must lie in (0, 0.5)");
    }
    if (std::isnan(p.beta_e) || p.beta_e < 0.0) {
        throw InvariantError("b_coefficients: beta_e must be nonnegative");
    }
    if (p.n < 0) throw InvariantError("b_coefficients: n must be nonnegative");
    return BCoefficients::evaluate(p.n, p.gtau(), p.f_e());
}

const char* to_string(Provenance provenance) {
    return provenance == Provenance::brute_force ? "brute_force" : "analytic";
}

OpenSwitchState initial_open_state(const KrausChannel& m, const KrausChannel& n,
                                   const DensityMatrix& rho_s) {
    return OpenSwitchState{switch_state(m, n, rho_s, DensityMatrix::pure(ket_plus())), 0,
                           Provenance::brute_force};
}

CollisionEngine::CollisionEngine(const CollisionParams& params, Eigen::Index system_dim)
    : d_s_(system_dim) {
    params.validate(system_dim);

    h_c_ = -0.5 * params.omega * pauli_x();
    h_e_ = h_c_;
    const Matrix coupling =
        0.5 * params.g * (tensor(pauli_z(), pauli_z()) + tensor(pauli_y(), pauli_y()));

    const Matrix id_s = Matrix::Identity(d_s_, d_s_);
    const Matrix id_c = Matrix::Identity(2, 2);
    const Matrix id_e = Matrix::Identity(2, 2);
    const Matrix h_tot = tensor(params.h_s, tensor(id_c, id_e)) +
                         tensor(id_s, tensor(h_c_, id_e)) + tensor(id_s, tensor(id_c, h_e_)) +
                         tensor(id_s, coupling);

    propagator_ = evolution_operator(h_tot, params.tau);
    theta_e_ = thermal_qubit(params.beta_e, params.omega, Axis::x).matrix();
}

OpenSwitchState CollisionEngine::step(const OpenSwitchState& state, CollisionEnergy* energy) const {
    if (state.provenance != Provenance::brute_force) {
        throw InvariantError("CollisionEngine: stepping requires a brute_force state");
    }
    if (state.joint.dim() != 2 * d_s_) {
        throw InvariantError("CollisionEngine: joint state dimension mismatch");
    }
    const Matrix before = tensor(state.joint.matrix(), theta_e_);
    const Matrix after = propagator_ * before * propagator_.adjoint();
    Matrix joint = partial_trace(after, {d_s_, 2, 2}, {0, 1});

    if (energy != nullptr) {
        const Matrix control_before = partial_trace(state.joint.matrix(), {d_s_, 2}, {1});
        const Matrix control_after = partial_trace(joint, {d_s_, 2}, {1});
        const Matrix env_after = partial_trace(after, {d_s_, 2, 2}, {2});
        energy->delta_control = real_energy(control_after - control_before, h_c_);
        energy->delta_environment = real_energy(env_after - theta_e_, h_e_);
    }
    return OpenSwitchState{DensityMatrix::from(std::move(joint)), state.n + 1,
                           Provenance::brute_force};
}

OpenSwitchState CollisionEngine::run(OpenSwitchState state, int collisions,
                                     CollisionEnergy* accumulated) const {
    if (collisions < 0) throw InvariantError("CollisionEngine: negative collision count");
    CollisionEnergy step_energy;
    for (int k = 0; k < collisions; ++k) {
        state = step(state, accumulated != nullptr ? &step_energy : nullptr);
        if (accumulated != nullptr) {
            accumulated->delta_control += step_energy.delta_control;
            accumulated->delta_environment += step_energy.delta_environment;
        }
    }
    return state;
}

OpenSwitchState collide_once(const OpenSwitchState& state, const CollisionParams& p,
                             CollisionEnergy* energy) {
    const CollisionEngine engine(p, state.joint.dim() / 2);
    return engine.step(state, energy);
}

OpenSwitchState analytic_state(const SwitchDecomposition& dec, const CollisionParams& p) {
    const Eigen::Index d = dec.a_def.rows();
    p.validate(d);

    const Matrix u_n = evolution_operator(p.h_s, p.tau * static_cast<double>(p.n));
    const Matrix a_def_n = u_n * dec.a_def * u_n.adjoint();
    const Matrix a_indef_n = u_n * dec.a_indef * u_n.adjoint();
    const Matrix a_pm_n = u_n * dec.a_pm * u_n.adjoint();

    const BCoefficients b = BCoefficients::evaluate(p.n, p.gtau(), p.f_e());
    const Matrix block_pp = 0.5 * (b.b_def_plus * a_def_n + b.b_indef_plus * a_indef_n);
    const Matrix block_mm = 0.5 * (b.b_def_minus * a_def_n + b.b_indef_minus * a_indef_n);
    const Complex coherence = std::polar(std::pow(std::cos(p.gtau()), static_cast<double>(p.n)),
                                         static_cast<double>(p.n) * p.tau * p.omega);
    const Matrix block_pm = coherence * a_pm_n;

    const Vector plus = ket_plus();
    const Vector minus = ket_minus();
    Matrix joint = tensor(block_pp, projector(plus)) + tensor(block_pm, ketbra(plus, minus)) +
                   tensor(block_pm.adjoint(), ketbra(minus, plus)) +
                   tensor(block_mm, projector(minus));
    return OpenSwitchState{DensityMatrix::from(std::move(joint)), p.n, Provenance::analytic};
}

PostSelection post_select_open(const SwitchDecomposition& dec, const CollisionParams& p,
                               Outcome outcome) {
    const Eigen::Index d = dec.a_def.rows();
    p.validate(d);

    const BCoefficients b = BCoefficients::evaluate(p.n, p.gtau(), p.f_e());
    const double b_def = (outcome == Outcome::plus) ? b.b_def_plus : b.b_def_minus;
    const double b_indef = (outcome == Outcome::plus) ? b.b_indef_plus : b.b_indef_minus;
    const double probability = 0.5 * (b_def + b_indef * dec.tr_a_indef());

    PostSelection result{outcome, std::max(probability, 0.0), std::nullopt};
    if (probability >= kProbabilityFloor) {
        const Matrix u_n = evolution_operator(p.h_s, p.tau * static_cast<double>(p.n));
        const Matrix a_def_n = u_n * dec.a_def * u_n.adjoint();
        const Matrix a_indef_n = u_n * dec.a_indef * u_n.adjoint();
        const Matrix block = 0.5 * (b_def * a_def_n + b_indef * a_indef_n);
        result.conditional_state = DensityMatrix::from(block / probability);
    }
    return result;
}

PostSelection post_select_open(const OpenSwitchState& state, Outcome outcome) {
    return post_select_control(state.joint, outcome);
}

} // namespace qswitch
