#include "qswitch/thermo.hpp"

#include <cmath>

namespace qswitch {

double heat_to_control(const BCoefficients& b, double omega, double tr_a_indef) {
    return 0.5 * omega * ((b.b_def_minus - 1.0) + (b.b_indef_minus + 1.0) * tr_a_indef);
}

double heat_to_control(const SwitchDecomposition& dec, const CollisionParams& p) {
    return heat_to_control(b_coefficients(p), p.omega, dec.tr_a_indef());
}

ThermoReport entropy_production(const OpenSwitchState& initial, const OpenSwitchState& final_state,
                                const CollisionParams& p) {
    if (initial.joint.dim() != final_state.joint.dim()) {
        throw InvariantError("entropy_production: joint dimension mismatch");
    }
    if (final_state.n < initial.n) {
        throw InvariantError("entropy_production: final state precedes initial state");
    }
    const Eigen::Index d = initial.joint.dim() / 2;
    const Matrix h_c = -0.5 * p.omega * pauli_x();
    const Matrix control_initial = partial_trace(initial.joint.matrix(), {d, 2}, {1});
    const Matrix control_final = partial_trace(final_state.joint.matrix(), {d, 2}, {1});

    ThermoReport report;
    report.heat_to_control = ((control_final - control_initial) * h_c).trace().real();
    report.entropy_change =
        von_neumann_entropy(final_state.joint) - von_neumann_entropy(initial.joint);
    report.entropy_flux = p.beta_e * report.heat_to_control;
    report.entropy_production = report.entropy_change - report.entropy_flux;
    return report;
}

double available_information(const DensityMatrix& rho) {
    return std::log(static_cast<double>(rho.dim())) - von_neumann_entropy(rho);
}

double coherence_relative_entropy(const Observable& obs, const DensityMatrix& rho) {
    const DensityMatrix dephased = apply_channel(dephasing_channel(obs), rho);
    return von_neumann_entropy(dephased) - von_neumann_entropy(rho);
}

} // namespace qswitch
