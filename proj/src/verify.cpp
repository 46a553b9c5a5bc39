#include "qswitch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "qswitch/fridge.hpp"
#include "qswitch/monitoring.hpp"
#include "qswitch/random.hpp"
#include "qswitch/thermo.hpp"
#include "parallel.hpp"

namespace qswitch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct OracleOutcome {
    double max_state_distance = 0.0; // brute vs analytic joint state
    double max_first_law = 0.0;      // |dU_C + dU_E| per collision
    double heat_error = 0.0;         // closed form vs accumulated dU_C
    double min_entropy_production = kInf;
    double max_prob_sum_error = 0.0; // |p(+) + p(-) - 1|
};

struct OracleCase {
    KrausChannel m;
    KrausChannel n;
    DensityMatrix rho_s;
    double gtau;
    double beta;
    double omega;
    Matrix h_s;
};

std::vector<OracleCase> build_oracle_grid(std::uint64_t seed, int channel_pairs) {
    const std::vector<double> gtaus{0.05, 0.1, 0.2};
    const std::vector<double> betas{0.0, 0.5, 1.0, 10.0};
    const std::vector<double> omegas{0.5, 1.0, 2.0};
    const std::vector<Matrix> hamiltonians{Matrix::Zero(2, 2), -0.5 * pauli_z(),
                                           -0.5 * pauli_x()};
    std::vector<OracleCase> grid;
    grid.reserve(static_cast<std::size_t>(channel_pairs) * gtaus.size() * betas.size() *
                 omegas.size() * hamiltonians.size());
    for (int pair = 0; pair < channel_pairs; ++pair) {
        RandomEngine rng = seeded_engine(seed, static_cast<std::uint64_t>(pair));
        std::uniform_int_distribution<int> kraus_count(1, 4);
        const KrausChannel m = random_channel(rng, 2, kraus_count(rng));
        const KrausChannel n = random_channel(rng, 2, kraus_count(rng));
        const DensityMatrix rho_s = random_density(rng, 2);
        for (const double gtau : gtaus) {
            for (const double beta : betas) {
                for (const double omega : omegas) {
                    for (const Matrix& h_s : hamiltonians) {
                        grid.push_back(OracleCase{m, n, rho_s, gtau, beta, omega, h_s});
                    }
                }
            }
        }
    }
    return grid;
}

OracleOutcome evaluate_oracle_case(const OracleCase& cs, int max_collisions) {
    OracleOutcome outcome;
    CollisionParams params{cs.omega, cs.gtau, 1.0, cs.beta, 0, cs.h_s};
    const SwitchDecomposition dec = decompose(cs.m, cs.n, cs.rho_s);
    const CollisionEngine engine(params, 2);

    OpenSwitchState brute = initial_open_state(cs.m, cs.n, cs.rho_s);
    const OpenSwitchState start = brute;
    double heat_accumulated = 0.0;
    CollisionEnergy energy;
    for (int k = 1; k <= max_collisions; ++k) {
        brute = engine.step(brute, &energy);
        heat_accumulated += energy.delta_control;
        outcome.max_first_law = std::max(outcome.max_first_law,
                                         std::abs(energy.delta_control + energy.delta_environment));
        params.n = k;
        const OpenSwitchState closed = analytic_state(dec, params);
        outcome.max_state_distance =
            std::max(outcome.max_state_distance, trace_distance(brute.joint, closed.joint));

        const PostSelection plus = post_select_open(dec, params, Outcome::plus);
        const PostSelection minus = post_select_open(dec, params, Outcome::minus);
        outcome.max_prob_sum_error = std::max(
            outcome.max_prob_sum_error, std::abs(plus.probability + minus.probability - 1.0));
    }

    params.n = max_collisions;
    outcome.heat_error = std::abs(heat_to_control(dec, params) - heat_accumulated);
    const ThermoReport thermo = entropy_production(start, brute, params);
    outcome.min_entropy_production = thermo.entropy_production;
    return outcome;
}

class CheckSet {
  public:
    explicit CheckSet(std::ostream* log) : log_(log) {}

    void add(std::string name, long cases, double worst, double bound, char comparator) {
        VerifyCheck check{std::move(name), cases, worst, bound, comparator, false};
        check.passed = (comparator == '<') ? (check.worst <= check.bound)
                                           : (check.worst >= check.bound);
        if (log_ != nullptr) {
            (*log_) << (check.passed ? "[ ok ] " : "[FAIL] ") << check.name << " (worst "
                    << check.worst << (comparator == '<' ? " <= " : " >= ") << check.bound
                    << ", " << check.cases << " cases)\n";
        }
        checks_.push_back(std::move(check));
    }

    std::vector<VerifyCheck> take() { return std::move(checks_); }

  private:
    std::ostream* log_;
    std::vector<VerifyCheck> checks_;
};

void check_oracle_grid(CheckSet& out, const VerifyOptions& options) {
    const auto grid = build_oracle_grid(options.seed, options.channel_pairs);
    const int collisions = 50;
    std::vector<OracleOutcome> results(grid.size());
    detail::parallel_for(grid.size(), options.threads,
                         [&](std::size_t i) { results[i] = evaluate_oracle_case(grid[i], collisions); });

    OracleOutcome worst;
    for (const OracleOutcome& r : results) {
        worst.max_state_distance = std::max(worst.max_state_distance, r.max_state_distance);
        worst.max_first_law = std::max(worst.max_first_law, r.max_first_law);
        worst.heat_error = std::max(worst.heat_error, r.heat_error);
        worst.min_entropy_production =
            std::min(worst.min_entropy_production, r.min_entropy_production);
        worst.max_prob_sum_error = std::max(worst.max_prob_sum_error, r.max_prob_sum_error);
    }
    const long cases = static_cast<long>(grid.size());
    out.add("oracle_state_equivalence", cases * collisions, worst.max_state_distance, 1e-8, '<');
    out.add("per_collision_first_law", cases * collisions, worst.max_first_law, 1e-10, '<');
    out.add("heat_closed_vs_brute", cases, worst.heat_error, 1e-8, '<');
    out.add("entropy_production_nonnegative", cases, worst.min_entropy_production, -1e-9, '>');
    out.add("post_selection_prob_sum", cases * collisions, worst.max_prob_sum_error, 1e-10, '<');
}

void check_energy_conservation(CheckSet& out) {
    // [H_C + H_E, V_CE] must vanish for the coupling to move pure heat.
    double worst = 0.0;
    for (const double omega : {0.5, 1.0, 2.0}) {
        for (const double g : {0.05, 0.1, 0.2}) {
            const Matrix h_local = -0.5 * omega *
                (tensor(pauli_x(), identity(2)) + tensor(identity(2), pauli_x()));
            const Matrix coupling =
                0.5 * g * (tensor(pauli_z(), pauli_z()) + tensor(pauli_y(), pauli_y()));
            worst = std::max(worst, (h_local * coupling - coupling * h_local).norm());
        }
    }
    out.add("strict_energy_conservation", 9, worst, 1e-12, '<');
}

void check_b_coefficients(CheckSet& out) {
    double worst_monotone = -kInf;
    double worst_initial = 0.0;
    double worst_identical = 0.0;
    double worst_high_t = 0.0;
    double worst_def_sum = 0.0;
    long cases = 0;
    for (const double gtau : {0.05, 0.1, 0.2}) {
        for (int n = 0; n <= 500; ++n) {
            const BCoefficients ref = BCoefficients::evaluate(n, gtau, 0.0);
            const BCoefficients next = BCoefficients::evaluate(n + 1, gtau, 0.0);
            worst_monotone = std::max(worst_monotone, std::abs(next.b_indef_plus) -
                                                          std::abs(ref.b_indef_plus));
            worst_high_t = std::max({worst_high_t, std::abs(ref.b_def_plus - 1.0),
                                     std::abs(ref.b_def_minus - 1.0)});
            for (const double f : {0.2, 0.7, 1.0}) {
                const BCoefficients other = BCoefficients::evaluate(n, gtau, f);
                worst_identical = std::max(worst_identical,
                                           std::abs(other.b_indef_plus - ref.b_indef_plus));
                worst_def_sum = std::max(worst_def_sum,
                                         std::abs(other.b_def_plus + other.b_def_minus - 2.0));
            }
            ++cases;
        }
        worst_initial = std::max(worst_initial,
                                 std::abs(BCoefficients::evaluate(0, gtau, 0.7).b_indef_plus) - 1.0);
    }
    out.add("sco_weight_strictly_decreasing", cases, worst_monotone, -1e-15, '<');
    out.add("sco_weight_starts_at_one", 3, std::abs(worst_initial), 0.0, '<');
    out.add("sco_weight_temperature_independent", cases * 3, worst_identical, 0.0, '<');
    out.add("high_temperature_keeps_def_terms", cases, worst_high_t, 0.0, '<');
    out.add("def_weights_sum_to_two", cases * 3, worst_def_sum, 1e-12, '<');
}

void check_shielding(CheckSet& out, const VerifyOptions& options) {
    double worst_state = 0.0;
    double worst_prob = 0.0;
    long cases = 0;
    const int pairs = std::min(options.channel_pairs, 12);
    for (int pair = 0; pair < pairs; ++pair) {
        RandomEngine rng = seeded_engine(options.seed, 7000 + static_cast<std::uint64_t>(pair));
        const KrausChannel m = random_channel(rng, 2, 3);
        const KrausChannel n = random_channel(rng, 2, 2);
        const DensityMatrix rho_s = random_density(rng, 2);
        const SwitchDecomposition dec = decompose(m, n, rho_s);
        const double p0_minus = post_select(dec, Outcome::minus).probability;

        CollisionParams params{1.0, 0.2, 1.0, kInf, 0, -0.5 * pauli_z()};
        const CollisionEngine engine(params, 2);
        OpenSwitchState state = initial_open_state(m, n, rho_s);
        for (int k = 1; k <= 50; ++k) {
            state = engine.step(state);
            if (k != 1 && k != 10 && k != 50) continue;
            params.n = k;
            const PostSelection minus = post_select_open(state, Outcome::minus);
            const double expected_p =
                std::pow(std::cos(params.gtau()), 2.0 * k) * p0_minus;
            worst_prob = std::max(worst_prob, std::abs(minus.probability - expected_p));
            if (minus.conditional_state.has_value()) {
                const Matrix u_n = evolution_operator(params.h_s, params.tau * k);
                const Matrix a_mm_n = u_n * dec.a_mm * u_n.adjoint();
                const DensityMatrix shielded =
                    DensityMatrix::from(a_mm_n / a_mm_n.trace().real());
                worst_state =
                    std::max(worst_state, trace_distance(*minus.conditional_state, shielded));
            }
            ++cases;
        }
    }
    out.add("zero_temperature_shielded_state", cases, worst_state, 1e-8, '<');
    out.add("zero_temperature_minus_probability", cases, worst_prob, 1e-10, '<');
}

void check_channel_algebra(CheckSet& out, const VerifyOptions& options) {
    RandomEngine rng = seeded_engine(options.seed, 9001);

    double worst_cptp = 0.0;
    long cptp_cases = 0;
    for (int i = 0; i < 40; ++i) {
        std::uniform_int_distribution<int> kraus_count(1, 5);
        std::uniform_int_distribution<Eigen::Index> dims(2, 4);
        const Eigen::Index d = dims(rng);
        const KrausChannel ch = random_channel(rng, d, kraus_count(rng));
        Matrix completeness = Matrix::Zero(d, d);
        for (const Matrix& k : ch.operators()) completeness += k.adjoint() * k;
        worst_cptp = std::max(worst_cptp,
                              (completeness - Matrix::Identity(d, d)).norm());
        const DensityMatrix rho = random_density(rng, d);
        const DensityMatrix mapped = apply_channel(ch, rho); // validates on construction
        worst_cptp = std::max(worst_cptp, std::abs(mapped.matrix().trace().real() - 1.0));
        ++cptp_cases;
    }
    out.add("random_channel_cptp", cptp_cases, worst_cptp, 1e-10, '<');

    const Observable oz = Observable::pauli_z();
    const Observable ox = Observable::pauli_x();
    double worst_compose = 0.0;
    double worst_commute = 0.0;
    long grid_cases = 0;
    for (int a = 0; a <= 10; ++a) {
        for (int b = 0; b <= 10; ++b) {
            const MonitoringStrength eps(a / 10.0);
            const MonitoringStrength eps_prime(b / 10.0);
            const DensityMatrix rho = random_density(rng, 2);
            const DensityMatrix two_step =
                apply_channel(monitoring_channel(oz, eps),
                              apply_channel(monitoring_channel(oz, eps_prime), rho));
            const DensityMatrix one_step =
                apply_channel(monitoring_channel(oz, MonitoringStrength::compose(eps, eps_prime)), rho);
            worst_compose = std::max(worst_compose,
                                     (two_step.matrix() - one_step.matrix()).cwiseAbs().maxCoeff());

            const DensityMatrix zx =
                apply_channel(monitoring_channel(oz, eps),
                              apply_channel(monitoring_channel(ox, eps_prime), rho));
            const DensityMatrix xz =
                apply_channel(monitoring_channel(ox, eps_prime),
                              apply_channel(monitoring_channel(oz, eps), rho));
            worst_commute = std::max(worst_commute,
                                     (zx.matrix() - xz.matrix()).cwiseAbs().maxCoeff());
            ++grid_cases;
        }
    }
    out.add("monitoring_composition_law", grid_cases, worst_compose, 1e-10, '<');
    out.add("mub_monitorings_commute", grid_cases, worst_commute, 1e-10, '<');

    double worst_dephase = 0.0;
    double worst_monotone = kInf;
    double worst_bound = kInf;
    for (int i = 0; i < 25; ++i) {
        const DensityMatrix rho = random_density(rng, 2);
        const DensityMatrix both =
            apply_channel(dephasing_channel(oz), apply_channel(dephasing_channel(ox), rho));
        worst_dephase = std::max(
            worst_dephase, (both.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff());

        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const MonitoringStrength eps(unit(rng));
        const MonitoringStrength eps_prime(unit(rng));
        const DensityMatrix monitored =
            apply_channel(monitoring_channel(ox, eps_prime),
                          apply_channel(monitoring_channel(oz, eps), rho));
        worst_monotone = std::min(worst_monotone, available_information(rho) -
                                                      available_information(monitored));
        const DensityMatrix single = apply_channel(monitoring_channel(oz, eps), rho);
        worst_bound = std::min(worst_bound,
                               available_information(rho) - available_information(single) -
                                   eps.value() * coherence_relative_entropy(oz, rho));
    }
    out.add("mub_double_dephasing_maximally_mixes", 25, worst_dephase, 1e-12, '<');
    out.add("information_monotone_under_monitoring", 25, worst_monotone, -1e-10, '>');
    out.add("information_drop_exceeds_coherence", 25, worst_bound, -1e-10, '>');
}

void check_fridge(CheckSet& out, const VerifyOptions& options) {
    (void)options;
    double worst_pipeline = 0.0;
    double worst_p_post = 0.0;
    long cases = 0;
    for (const double beta_e : {0.0, 0.7, 1.5}) {
        FridgeParams fp;
        fp.omega_s = 1.0;
        fp.omega = 1.0;
        fp.beta_hot = 1.0;
        fp.beta_cold = 1.5;
        fp.g = 0.1;
        fp.tau = 1.0;
        fp.beta_e = beta_e;

        const KrausChannel cooling = fridge_kraus(fp.theta_cold(), pauli_unitaries());
        CollisionParams params{fp.omega, fp.g, fp.tau, beta_e, 0, fp.h_s()};
        const CollisionEngine engine(params, 2);
        OpenSwitchState brute = initial_open_state(cooling, cooling, fp.theta_cold());
        for (int n = 0; n <= 50; ++n) {
            fp.n = n;
            const OpenSwitchState closed = fridge_joint_state(fp);
            worst_pipeline = std::max(worst_pipeline, trace_distance(brute.joint, closed.joint));

            const CycleReport report = cycle_report(fp);
            const PostSelection projected = post_select_control(closed.joint, Outcome::minus);
            worst_p_post = std::max(worst_p_post,
                                    std::abs(report.p_minus - projected.probability));
            ++cases;
            if (n < 50) brute = engine.step(brute);
        }
    }
    out.add("fridge_closed_form_vs_pipeline", cases, worst_pipeline, 1e-8, '<');
    out.add("fridge_p_post_vs_projection", cases, worst_p_post, 1e-12, '<');
}

void check_monitoring_switch(CheckSet& out, const VerifyOptions& options) {
    RandomEngine rng = seeded_engine(options.seed, 12001);
    const Observable oz = Observable::pauli_z();
    const Observable ox = Observable::pauli_x();

    double worst_chi = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        MonitoringSwitchParams params{MonitoringStrength(unit(rng)), oz, ox,
                                      random_density(rng, 2),
                                      CollisionParams{1.0, 0.2, 1.0, 0.0, 0, -0.5 * pauli_x()}};
        const Complex value = chi(params); // throws if the dual routes split
        const KrausChannel m = monitoring_channel(oz, params.eps);
        const KrausChannel n = monitoring_channel(ox, params.eps);
        const double direct = decompose(m, n, params.rho_s).tr_a_indef();
        worst_chi = std::max(worst_chi, std::abs(value.real() - direct));
    }
    out.add("chi_matches_decomposition", 20, worst_chi, 1e-10, '<');

    double worst_state = 0.0;
    double worst_prob = 0.0;
    long cases = 0;
    for (const double eps : {0.0, 0.3, 0.7, 1.0}) {
        for (const int n : {0, 1, 10, 40}) {
            for (const double beta : {0.0, 0.1, 1.0, 10.0}) {
                MonitoringSwitchParams params{
                    MonitoringStrength(eps), oz, ox, DensityMatrix::pure(ket_plus()),
                    CollisionParams{1.0, 0.2, 1.0, beta, n, -0.5 * pauli_x()}};
                const KrausChannel m = monitoring_channel(oz, params.eps);
                const KrausChannel nc = monitoring_channel(ox, params.eps);
                const SwitchDecomposition dec = decompose(m, nc, params.rho_s);
                const OpenSwitchState evolved = analytic_state(dec, params.collision);
                for (const Outcome outcome : {Outcome::plus, Outcome::minus}) {
                    const PostSelection closed = conditional_qubit_state(params, outcome);
                    const PostSelection generic = post_select_control(evolved.joint, outcome);
                    worst_prob = std::max(worst_prob,
                                          std::abs(closed.probability - generic.probability));
                    if (closed.conditional_state && generic.conditional_state) {
                        worst_state = std::max(worst_state,
                                               trace_distance(*closed.conditional_state,
                                                              *generic.conditional_state));
                    }
                    ++cases;
                }
            }
        }
    }
    out.add("monitoring_closed_form_probability", cases, worst_prob, 1e-10, '<');
    out.add("monitoring_closed_form_state", cases, worst_state, 1e-10, '<');
}

} // namespace

std::vector<VerifyCheck> run_verification(const VerifyOptions& options) {
    CheckSet checks(options.log);
    check_energy_conservation(checks);
    check_b_coefficients(checks);
    check_channel_algebra(checks, options);
    check_monitoring_switch(checks, options);
    check_fridge(checks, options);
    check_shielding(checks, options);
    check_oracle_grid(checks, options);
    return checks.take();
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.passed; });
}

} // namespace qswitch
