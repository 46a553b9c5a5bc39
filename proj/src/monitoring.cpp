#include "qswitch/monitoring.hpp"

#include <cmath>
#include <string>

namespace qswitch {

namespace {

constexpr double kMubTol = 1e-10;
constexpr double kCrossCheckTol = 1e-10;

double tanh_half(double beta, double omega) {
    if (beta == 0.0 || omega == 0.0) return 0.0;
    return std::tanh(0.5 * beta * omega);
}

void check_scalar_collision(const CollisionParams& p) {
    if (!(p.omega > 0.0)) throw InvariantError("monitoring: omega must be positive");
    if (!(p.g > 0.0 && p.tau > 0.0 && p.gtau() < 0.5)) {
        throw InvariantError("monitoring: g*tau must lie in (0, 0.5)");
    }
}

double clamp_population(double value, const char* label) {
    if (value < -1e-12) {
        throw NumericalError(std::string("monitoring: negative population in ") + label);
    }
    return std::max(value, 0.0);
}

struct QubitBranch {
    double probability;
    double pop_plus;  // weight on |+>
    double pop_minus; // weight on |->
};

QubitBranch qubit_branch(double eps, const BCoefficients& b, Outcome outcome) {
    const double b_def = (outcome == Outcome::plus) ? b.b_def_plus : b.b_def_minus;
    const double b_indef = (outcome == Outcome::plus) ? b.b_indef_plus : b.b_indef_minus;
    QubitBranch branch;
    branch.probability = 0.5 * (b_def + b_indef * (1.0 - 0.5 * eps * eps));
    branch.pop_plus = clamp_population((1.0 - 0.5 * eps) * (b_def + b_indef), "plus population");
    branch.pop_minus =
        clamp_population(0.5 * eps * (b_def + b_indef * (1.0 - eps)), "minus population");
    return branch;
}

} // namespace

void require_mub(const Observable& a, const Observable& b) {
    if (a.dim() != b.dim()) {
        throw InvariantError("require_mub: observables live in different dimensions");
    }
    const double expected = 1.0 / std::sqrt(static_cast<double>(a.dim()));
    const auto kets_a = a.basis_kets();
    const auto kets_b = b.basis_kets();
    for (const Vector& ka : kets_a) {
        for (const Vector& kb : kets_b) {
            const double overlap = std::abs(ka.dot(kb));
            if (std::abs(overlap - expected) > kMubTol) {
                throw InvariantError("require_mub: overlap magnitude " + std::to_string(overlap) +
                                     " deviates from 1/sqrt(d)");
            }
        }
    }
}

std::vector<std::vector<double>> mub_phases(const Observable& a, const Observable& b) {
    require_mub(a, b);
    const double root_d = std::sqrt(static_cast<double>(a.dim()));
    const auto kets_a = a.basis_kets();
    const auto kets_b = b.basis_kets();
    std::vector<std::vector<double>> phases(kets_a.size(), std::vector<double>(kets_b.size()));
    for (std::size_t i = 0; i < kets_a.size(); ++i) {
        for (std::size_t j = 0; j < kets_b.size(); ++j) {
            phases[i][j] = std::arg(root_d * kets_a[i].dot(kets_b[j]));
        }
    }
    return phases;
}

Complex chi(const MonitoringSwitchParams& params) {
    require_mub(params.obs, params.obs_prime);
    if (params.rho_s.dim() != params.obs.dim()) {
        throw InvariantError("chi: system state dimension mismatch");
    }
    const double eps = params.eps.value();
    const double d = static_cast<double>(params.obs.dim());

    const auto kets = params.obs.basis_kets();
    const auto kets_prime = params.obs_prime.basis_kets();
    Complex interference{0.0, 0.0};
    for (const Vector& oi : kets) {
        for (const Vector& oj : kets_prime) {
            const Complex phase = std::sqrt(d) * oi.dot(oj); // e^{i phi_ij}
            interference += phase * (oj.adjoint() * params.rho_s.matrix() * oi).value();
        }
    }
    const Complex value = (1.0 - eps) * (1.0 - eps) + 2.0 * eps * (1.0 - eps) +
                          eps * eps / std::pow(d, 1.5) * interference;

    // Dual route: the same number must fall out of the A-operator algebra.
    const KrausChannel m = monitoring_channel(params.obs, params.eps);
    const KrausChannel n = monitoring_channel(params.obs_prime, params.eps);
    const double direct = decompose(m, n, params.rho_s).tr_a_indef();
    if (std::abs(value.real() - direct) > kCrossCheckTol) {
        throw NumericalError("chi: Re(chi) disagrees with tr(a_indef) by " +
                             std::to_string(std::abs(value.real() - direct)));
    }
    return value;
}

PostSelection conditional_qubit_state(const MonitoringSwitchParams& params, Outcome outcome) {
    if (params.rho_s.dim() != 2 || params.obs.dim() != 2 || params.obs_prime.dim() != 2) {
        throw InvariantError("conditional_qubit_state: qubit fast path needs qubit inputs");
    }
    if ((params.rho_s.matrix() - projector(ket_plus())).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvariantError("conditional_qubit_state: rho_s must be |+><+|");
    }
    const Matrix sz = pauli_z();
    const Matrix sx = pauli_x();
    for (const Matrix& p : params.obs.projectors()) {
        if ((p * sz - sz * p).cwiseAbs().maxCoeff() > 1e-10) {
            throw InvariantError("conditional_qubit_state: obs must be the sigma_z basis");
        }
    }
    for (const Matrix& p : params.obs_prime.projectors()) {
        if ((p * sx - sx * p).cwiseAbs().maxCoeff() > 1e-10) {
            throw InvariantError("conditional_qubit_state: obs_prime must be the sigma_x basis");
        }
    }
    check_scalar_collision(params.collision);
    const Matrix& h_s = params.collision.h_s;
    if (h_s.rows() != 2 || h_s.cols() != 2 || !is_hermitian(h_s) ||
        (h_s * sx - sx * h_s).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvariantError(
            "conditional_qubit_state: h_s must be Hermitian and diagonal in the |+>/|-> basis");
    }

    const BCoefficients b = b_coefficients(params.collision);
    const QubitBranch branch = qubit_branch(params.eps.value(), b, outcome);

    PostSelection result{outcome, std::max(branch.probability, 0.0), std::nullopt};
    if (branch.probability >= kProbabilityFloor) {
        const Matrix state = (branch.pop_plus * projector(ket_plus()) +
                              branch.pop_minus * projector(ket_minus())) /
                             (2.0 * branch.probability);
        result.conditional_state = DensityMatrix::from(state);
    }
    return result;
}

std::vector<InfoPoint> information_curve(const std::vector<double>& eps_grid,
                                         const std::vector<int>& n_list,
                                         const std::vector<double>& beta_list,
                                         const CollisionParams& base) {
    check_scalar_collision(base);
    std::vector<InfoPoint> table;
    table.reserve(eps_grid.size() * n_list.size() * beta_list.size() * 2);
    for (const double eps : eps_grid) {
        MonitoringStrength strength(eps); // range check
        for (const int n : n_list) {
            if (n < 0) throw InvariantError("information_curve: n must be nonnegative");
            for (const double beta : beta_list) {
                if (std::isnan(beta) || beta < 0.0) {
                    throw InvariantError("information_curve: beta must be nonnegative");
                }
                const BCoefficients b =
                    BCoefficients::evaluate(n, base.gtau(), tanh_half(beta, base.omega));
                for (const Outcome outcome : {Outcome::plus, Outcome::minus}) {
                    const QubitBranch branch = qubit_branch(strength.value(), b, outcome);
                    InfoPoint point{eps, n, beta, outcome, std::max(branch.probability, 0.0),
                                    std::nullopt};
                    if (branch.probability >= kProbabilityFloor) {
                        double entropy = 0.0;
                        for (double w : {branch.pop_plus, branch.pop_minus}) {
                            const double pop = w / (2.0 * branch.probability);
                            if (pop > 0.0) entropy -= pop * std::log(pop);
                        }
                        point.info_nats = std::log(2.0) - entropy;
                    }
                    table.push_back(std::move(point));
                }
            }
        }
    }
    return table;
}

} // namespace qswitch
