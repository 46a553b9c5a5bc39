#include "qswitch/fridge.hpp"

#include <cmath>
#include <limits>

namespace qswitch {

namespace {

double tanh_half(double beta, double omega) {
    if (beta == 0.0 || omega == 0.0) return 0.0;
    return std::tanh(0.5 * beta * omega);
}

} // namespace

double FridgeParams::f_e() const { return tanh_half(beta_e, omega); }

double FridgeParams::f_cold() const { return tanh_half(beta_cold, omega); }

Matrix FridgeParams::h_s() const { return -0.5 * omega_s * pauli_z(); }

DensityMatrix FridgeParams::theta_cold() const {
    return thermal_qubit(beta_cold, omega_s, Axis::z);
}

void FridgeParams::validate() const {
    if (!(omega_s > 0.0)) throw InvariantError("FridgeParams: omega_s must be positive");
    if (!(omega >= 0.0)) throw InvariantError("FridgeParams: omega must be nonnegative");
    if (!(beta_hot > 0.0)) throw InvariantError("FridgeParams: beta_hot must be positive");
    if (!(beta_cold > beta_hot)) {
        throw InvariantError("FridgeParams: beta_cold must exceed beta_hot");
    }
    if (!(g > 0.0 && tau > 0.0 && gtau() < 0.5)) {
        throw InvariantError("FridgeParams: g*tau must lie in (0, 0.5)");
    }
    if (n < 0) throw InvariantError("FridgeParams: n must be nonnegative");
    if (std::isnan(beta_e) || beta_e < 0.0) {
        throw InvariantError("FridgeParams: beta_e must be nonnegative");
    }
}

double tr_theta_cold_cubed(double beta_cold, double omega_s) {
    const double t = tanh_half(beta_cold, omega_s);
    return 0.25 * (1.0 + 3.0 * t * t);
}

OpenSwitchState fridge_joint_state(const FridgeParams& fp) {
    fp.validate();
    const BCoefficients b = BCoefficients::evaluate(fp.n, fp.gtau(), fp.f_e());
    const Matrix theta = fp.theta_cold().matrix();
    const Matrix theta3 = theta * theta * theta;
    const Matrix sx = pauli_x();
    const Matrix control_part = Matrix::Identity(2, 2) + (1.0 - b.b_def_minus) * sx;
    Matrix joint = 0.5 * tensor(theta, control_part) - 0.5 * b.b_indef_minus * tensor(theta3, sx);
    return OpenSwitchState{DensityMatrix::from(std::move(joint)), fp.n, Provenance::analytic};
}

CycleReport cycle_report(const FridgeParams& fp) {
    fp.validate();
    const BCoefficients b = BCoefficients::evaluate(fp.n, fp.gtau(), fp.f_e());
    const double tr3 = tr_theta_cold_cubed(fp.beta_cold, fp.omega_s);

    CycleReport report;
    report.p_plus = std::max(0.5 * (b.b_def_plus + b.b_indef_plus * tr3), 0.0);
    report.p_minus = std::max(0.5 * (b.b_def_minus + b.b_indef_minus * tr3), 0.0);

    const double t_cold = std::tanh(0.5 * fp.beta_cold * fp.omega_s);
    const double t_hot = std::tanh(0.5 * fp.beta_hot * fp.omega_s);
    const double sech2_cold = 1.0 - t_cold * t_cold;

    // The p_minus * Q_{n,-} product has no division, so the average heat
    // stays finite even where the minus outcome dies out.
    const double sco_pull = -fp.omega_s * (b.b_indef_minus / 8.0) * t_cold * sech2_cold;
    const double bath_swap = 0.5 * fp.omega_s * (t_hot - t_cold);
    report.avg_heat = sco_pull + report.p_minus * bath_swap;
    report.q_minus = (report.p_minus >= kProbabilityFloor)
                         ? sco_pull / report.p_minus + bath_swap
                         : std::numeric_limits<double>::quiet_NaN();

    report.work_measure_plus = 0.5 * fp.omega * (2.0 * report.p_plus - 2.0);
    report.work_measure_minus = 0.5 * fp.omega * (2.0 * report.p_plus);

    double erasure = 0.0;
    for (const double p : {report.p_plus, report.p_minus}) {
        if (p > 0.0) erasure -= p * std::log(p);
    }
    report.work_erasure = erasure / fp.beta_hot;

    report.control_heat =
        heat_to_control(BCoefficients::evaluate(fp.n, fp.gtau(), fp.f_cold()), fp.omega, tr3);

    if (report.work_erasure > 1e-15 && report.p_minus >= kProbabilityFloor) {
        report.cop = report.avg_heat / report.work_erasure;
        report.cop_prime = *report.cop + report.control_heat / report.work_erasure;
    }
    return report;
}

double avg_heat_closed_control(double omega_s, double beta_hot, double beta_cold) {
    const double t_cold = std::tanh(0.5 * beta_cold * omega_s);
    const double t_hot = std::tanh(0.5 * beta_hot * omega_s);
    return -omega_s * (t_cold - 3.0 * t_hot) / (8.0 * (std::cosh(beta_cold * omega_s) + 1.0));
}

double control_heat(const FridgeParams& fp) {
    fp.validate();
    if (fp.beta_e != fp.beta_cold) {
        throw InvariantError("control_heat: requires beta_e == beta_cold");
    }
    const double tr3 = tr_theta_cold_cubed(fp.beta_cold, fp.omega_s);
    return heat_to_control(BCoefficients::evaluate(fp.n, fp.gtau(), fp.f_cold()), fp.omega, tr3);
}

std::vector<std::uint8_t> refrigeration_region(const std::vector<double>& beta_hot,
                                               const std::vector<double>& beta_cold,
                                               double omega_s) {
    if (!(omega_s > 0.0)) throw InvariantError("refrigeration_region: omega_s must be positive");
    std::vector<std::uint8_t> mask;
    mask.reserve(beta_hot.size() * beta_cold.size());
    for (const double bh : beta_hot) {
        for (const double bc : beta_cold) {
            const bool works = bc > bh && avg_heat_closed_control(omega_s, bh, bc) > 0.0;
            mask.push_back(works ? 1 : 0);
        }
    }
    return mask;
}

} // namespace qswitch
