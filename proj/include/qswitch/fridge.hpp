#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qswitch/thermo.hpp"

namespace qswitch {

/// Parameters of the switch-powered refrigerator: a qubit working
/// substance with gap omega_s (H_S = -(omega_s/2) sigma_z) cycling between
/// a cold and a hot bath, with the switch control exposed to collisions
/// at inverse temperature beta_e before its measurement.
struct FridgeParams {
    double omega_s = 1.0;
    double omega = 1.0; // control/environment gap; 0 allowed (decoupled energy scale)
    double beta_hot = 1.0;
    double beta_cold = 1.5;
    double g = 0.1;
    double tau = 1.0;
    int n = 0;
    double beta_e = 0.0;

    double gtau() const { return g * tau; }
    double f_e() const;
    double f_cold() const; // tanh(beta_cold omega / 2)

    Matrix h_s() const; // -(omega_s/2) sigma_z
    DensityMatrix theta_cold() const;

    void validate() const;
};

/// tr(Theta_cold^3) = 1 - (3/4) sech^2(beta_cold omega_s / 2); this is the
/// tr(a_indef) of the refrigerator switch.
double tr_theta_cold_cubed(double beta_cold, double omega_s);

/// One-cycle energetics after n collisions. COP fields are left empty when
/// the erasure work vanishes (p in {0, 1}) or the minus outcome becomes
/// unreachable; reporting 0/0 corners as zero would fake performance.
struct CycleReport {
    double p_minus = 0.0;
    double p_plus = 0.0;
    double q_minus = 0.0;            // heat drawn from the cold bath, minus branch
    double avg_heat = 0.0;           // p_minus * q_minus, evaluated product-form
    double work_erasure = 0.0;       // Landauer reset of the outcome register (hot bath)
    double work_measure_plus = 0.0;  // control measurement work, plus branch
    double work_measure_minus = 0.0; // control measurement work, minus branch
    double control_heat = 0.0;       // q_n at f_cold, control coupled to the cold bath
    std::optional<double> cop;
    std::optional<double> cop_prime; // cop + control_heat / work_erasure
};

/// Closed-form joint system-control state after n collisions:
///   (1/2) Theta (x) [1 + (1 - b_def^-) sx] - (1/2) b_indef^- Theta^3 (x) sx.
/// At n = 0 this is the post-switch state (Theta (x) 1 + Theta^3 (x) sx)/2.
OpenSwitchState fridge_joint_state(const FridgeParams& fp);

CycleReport cycle_report(const FridgeParams& fp);

/// Average cold-bath heat of the closed-control cycle (n = 0):
///   -omega_s [tanh(bc ws/2) - 3 tanh(bh ws/2)] / [8 (cosh(bc ws) + 1)].
double avg_heat_closed_control(double omega_s, double beta_hot, double beta_cold);

/// Heat transferred to the control after n collisions with the cold bath;
/// requires beta_e == beta_cold (the control shares the cold environment).
double control_heat(const FridgeParams& fp);

/// Row-major mask over (beta_hot x beta_cold): true where the closed-control
/// cycle refrigerates (avg heat > 0 and beta_cold > beta_hot).
std::vector<std::uint8_t> refrigeration_region(const std::vector<double>& beta_hot,
                                               const std::vector<double>& beta_cold,
                                               double omega_s);

} // namespace qswitch
