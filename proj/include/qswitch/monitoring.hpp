#pragma once

#include <optional>
#include <vector>

#include "qswitch/thermo.hpp"

namespace qswitch {

/// Switch of two equal-strength monitoring maps of mutually unbiased
/// observables, with the control exposed to collisions before its
/// post-selection.
struct MonitoringSwitchParams {
    MonitoringStrength eps;
    Observable obs;
    Observable obs_prime;
    DensityMatrix rho_s;
    CollisionParams collision;
};

/// Throws InvariantError unless every cross overlap has magnitude
/// 1/sqrt(d) within 1e-10.
void require_mub(const Observable& a, const Observable& b);

/// phases[i][j] = arg(sqrt(d) <o_i|o'_j>), the overlap phases implied by
/// the stored bases. No gauge is canonical here; these are whatever the
/// chosen kets produce, and everything downstream is gauge-invariant.
std::vector<std::vector<double>> mub_phases(const Observable& a, const Observable& b);

/// Interference weight of the monitoring switch:
///   chi = (1-eps)^2 + 2 eps (1-eps)
///       + (eps^2 / d^{3/2}) sum_ij e^{i phi_ij} <o'_j| rho |o_i>.
/// Re(chi) must equal tr(a_indef) of the corresponding decomposition; the
/// two routes are compared internally and a mismatch throws rather than
/// being silently patched over.
Complex chi(const MonitoringSwitchParams& params);

/// Fast path for the qubit benchmark: rho_s = |+><+|, obs = sigma_z,
/// obs' = sigma_x, and a system Hamiltonian diagonal in the |+->/|-> basis.
/// The conditional state stays diagonal in that basis with populations
///   (1 - eps/2)(b_def + b_indef)        on |+>,
///   (eps/2)(b_def + b_indef (1 - eps))  on |->,
/// normalized by 2 p(+-), p(+-) = [b_def + b_indef (1 - eps^2/2)] / 2.
PostSelection conditional_qubit_state(const MonitoringSwitchParams& params, Outcome outcome);

struct InfoPoint {
    double eps;
    int n;
    double beta;
    Outcome outcome;
    double p_post;
    std::optional<double> info_nats; // empty when the outcome is unreachable
};

/// Available-information table over a (eps, n, beta) grid for both
/// post-selection outcomes, using the qubit closed form. The grid rows are
/// emitted in (eps, n, beta, outcome) lexicographic order.
std::vector<InfoPoint> information_curve(const std::vector<double>& eps_grid,
                                         const std::vector<int>& n_list,
                                         const std::vector<double>& beta_list,
                                         const CollisionParams& base);

} // namespace qswitch
