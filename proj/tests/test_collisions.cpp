#include "helpers.hpp"

#include <cmath>
#include <limits>

#include "qswitch/collisions.hpp"

using namespace qswitch;
using qswitch::test::max_abs_diff;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CollisionParams make_params(double omega, double gtau, double beta, int n, Matrix h_s) {
    CollisionParams p;
    p.omega = omega;
    p.g = gtau;
    p.tau = 1.0;
    p.beta_e = beta;
    p.n = n;
    p.h_s = std::move(h_s);
    return p;
}

} // namespace

TEST_CASE("thermal_qubit: limits and frozen populations") {
    CHECK(max_abs_diff(thermal_qubit(0.0, 1.0, Axis::x).matrix(), identity(2) / 2.0) < 1e-14);

    // effectively zero temperature
    CHECK(trace_distance(thermal_qubit(1e6, 1.0, Axis::x), DensityMatrix::pure(ket_plus())) <
          1e-10);
    CHECK(trace_distance(thermal_qubit(kInf, 1.0, Axis::x), DensityMatrix::pure(ket_plus())) ==
          doctest::Approx(0.0).epsilon(1e-14));

    // beta = 1, omega = 1: populations (1 +- tanh(1/2))/2 in the |+>/|-> basis
    const DensityMatrix theta = thermal_qubit(1.0, 1.0, Axis::x);
    const double p_plus = (ket_plus().adjoint() * theta.matrix() * ket_plus()).value().real();
    const double p_minus = (ket_minus().adjoint() * theta.matrix() * ket_minus()).value().real();
    CHECK(p_plus == doctest::Approx(0.7310585786300049).epsilon(1e-14));
    CHECK(p_minus == doctest::Approx(0.2689414213699951).epsilon(1e-14));

    const DensityMatrix theta_z = thermal_qubit(1.0, 1.0, Axis::z);
    CHECK(theta_z.matrix()(0, 0).real() == doctest::Approx(0.7310585786300049).epsilon(1e-14));

    CHECK_THROWS_AS(thermal_qubit(-1.0, 1.0, Axis::x), InvariantError);
}

TEST_CASE("CollisionParams: validation and weak-collision warning") {
    CollisionParams p = make_params(1.0, 0.2, 0.5, 3, Matrix::Zero(2, 2));
    CHECK_FALSE(p.validate(2).has_value());

    p.g = 0.3; // g tau = 0.3 > 0.25: still legal but warned
    CHECK(p.validate(2).has_value());

    p.g = 0.6;
    CHECK_THROWS_AS(p.validate(2), InvariantError);

    p = make_params(1.0, 0.2, -0.1, 0, Matrix::Zero(2, 2));
    CHECK_THROWS_AS(p.validate(2), InvariantError);

    p = make_params(1.0, 0.2, 0.0, 0, pauli_y() * pauli_z()); // not Hermitian
    CHECK_THROWS_AS(p.validate(2), InvariantError);

    // beta_e = +infinity is the exact zero-temperature flag
    p = make_params(1.0, 0.2, kInf, 0, Matrix::Zero(2, 2));
    CHECK_FALSE(p.validate(2).has_value());
    CHECK(p.f_e() == 1.0);
}

TEST_CASE("b_coefficients: frozen scalar oracles") {
    // n = 0 is the closed-control limit
    const BCoefficients b0 = b_coefficients(make_params(1.0, 0.2, 1.0, 0, Matrix::Zero(2, 2)));
    CHECK(b0.b_def_plus == 1.0);
    CHECK(b0.b_def_minus == 1.0);
    CHECK(b0.b_indef_plus == 1.0);
    CHECK(b0.b_indef_minus == -1.0);

    const BCoefficients b1 = b_coefficients(make_params(1.0, 0.2, 1.0, 1, Matrix::Zero(2, 2)));
    CHECK(b1.b_indef_plus == doctest::Approx(0.9605304970014426).epsilon(1e-15));

    // n = 10, beta = 1, omega = 1: cos^20(0.2) and 1 - tanh(1/2)(1 - cos^20)
    const BCoefficients b10 = b_coefficients(make_params(1.0, 0.2, 1.0, 10, Matrix::Zero(2, 2)));
    CHECK(b10.b_indef_plus == doctest::Approx(0.6685156573838916).epsilon(1e-14));
    CHECK(b10.b_def_minus == doctest::Approx(0.8468153979140409).epsilon(1e-14));
    CHECK(b10.b_def_plus + b10.b_def_minus == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("b_coefficients: monotone SCO decay, temperature independence") {
    for (const double gtau : {0.05, 0.1, 0.2}) {
        double previous = 1.0;
        for (int n = 1; n <= 300; ++n) {
            const BCoefficients b = BCoefficients::evaluate(n, gtau, 0.3);
            CHECK(std::abs(b.b_indef_plus) < previous);
            CHECK(b.b_indef_plus == -b.b_indef_minus);
            previous = std::abs(b.b_indef_plus);

            // bit-identical across temperatures and frequencies
            for (const double f : {0.0, 0.5, 1.0}) {
                CHECK(BCoefficients::evaluate(n, gtau, f).b_indef_plus == b.b_indef_plus);
            }
        }
    }
}

TEST_CASE("collide_once: free evolution when the coupling is negligible") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 30);
    const KrausChannel m = random_channel(rng, 2, 2);
    const KrausChannel n = random_channel(rng, 2, 3);
    const DensityMatrix rho_s = random_density(rng, 2);
    const OpenSwitchState start = initial_open_state(m, n, rho_s);

    // vanishing collision time: state unchanged
    CollisionParams tiny = make_params(1.0, 1e-9, 1.0, 0, Matrix::Zero(2, 2));
    tiny.g = 1.0;
    tiny.tau = 1e-9;
    const OpenSwitchState after_tiny = collide_once(start, tiny);
    CHECK(trace_distance(after_tiny.joint, start.joint) < 1e-7);
    CHECK(after_tiny.n == 1);

    // weak coupling, H_S = 0: control populations in |+>/|-> are fixed
    CollisionParams weak = make_params(1.0, 1e-8, 1.0, 0, Matrix::Zero(2, 2));
    const OpenSwitchState after_weak = collide_once(start, weak);
    const Matrix control_before = partial_trace(start.joint.matrix(), {2, 2}, {1});
    const Matrix control_after = partial_trace(after_weak.joint.matrix(), {2, 2}, {1});
    const Matrix pp = projector(ket_plus());
    CHECK(std::abs(((control_after - control_before) * pp).trace()) < 1e-10);
}

TEST_CASE("collide_once: control coherence shrinks by cos(g tau) per collision") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 31);
    const KrausChannel m = random_channel(rng, 2, 2);
    const KrausChannel n = random_channel(rng, 2, 2);
    const DensityMatrix rho_s = random_density(rng, 2);
    const OpenSwitchState start = initial_open_state(m, n, rho_s);
    const CollisionParams p = make_params(1.0, 0.2, 1.0, 0, Matrix::Zero(2, 2));

    const OpenSwitchState stepped = collide_once(start, p);

    const Vector plus = ket_plus();
    const Vector minus = ket_minus();
    const auto coherence_block = [&](const DensityMatrix& joint) {
        const Matrix pm = tensor(identity(2), ketbra(minus, plus));
        return (pm * joint.matrix()).trace(); // tr_S <+|rho|->
    };
    const Complex before = coherence_block(start.joint);
    const Complex after = coherence_block(stepped.joint);
    CHECK(std::abs(after) == doctest::Approx(std::abs(before) * std::cos(0.2)).epsilon(1e-12));
}

TEST_CASE("analytic_state: n = 0 reproduces the switch output") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 32);
    const KrausChannel m = random_channel(rng, 2, 3);
    const KrausChannel n = random_channel(rng, 2, 2);
    const DensityMatrix rho_s = random_density(rng, 2);
    const SwitchDecomposition dec = decompose(m, n, rho_s);
    const CollisionParams p = make_params(1.0, 0.2, 1.0, 0, test::sigma_z_hamiltonian(0.7));

    const OpenSwitchState closed = analytic_state(dec, p);
    const OpenSwitchState start = initial_open_state(m, n, rho_s);
    CHECK(max_abs_diff(closed.joint.matrix(), start.joint.matrix()) < 1e-12);
    CHECK(closed.provenance == Provenance::analytic);
}

TEST_CASE("oracle equivalence: brute-force vs analytic on random draws") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 33);
    const std::vector<Matrix> hamiltonians{Matrix::Zero(2, 2), test::sigma_z_hamiltonian(1.0),
                                           test::sigma_x_hamiltonian(1.0)};
    for (int i = 0; i < 6; ++i) {
        std::uniform_int_distribution<int> kraus_count(1, 4);
        const KrausChannel m = random_channel(rng, 2, kraus_count(rng));
        const KrausChannel n = random_channel(rng, 2, kraus_count(rng));
        const DensityMatrix rho_s = random_density(rng, 2);
        const SwitchDecomposition dec = decompose(m, n, rho_s);
        const double gtau = (i % 2 == 0) ? 0.2 : 0.1;
        const double beta = (i % 3 == 0) ? 0.0 : 1.0;
        const Matrix h_s = hamiltonians[static_cast<std::size_t>(i) % hamiltonians.size()];

        CollisionParams p = make_params(1.0, gtau, beta, 0, h_s);
        const CollisionEngine engine(p, 2);
        OpenSwitchState brute = initial_open_state(m, n, rho_s);
        for (int k = 1; k <= 25; ++k) {
            brute = engine.step(brute);
            p.n = k;
            const OpenSwitchState closed = analytic_state(dec, p);
            CHECK(trace_distance(brute.joint, closed.joint) < 1e-8);
        }
    }
}

TEST_CASE("oracle equivalence holds beyond qubit system dimension") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 34);
    const KrausChannel m = random_channel(rng, 3, 2);
    const KrausChannel n = random_channel(rng, 3, 3);
    const DensityMatrix rho_s = random_density(rng, 3);
    const SwitchDecomposition dec = decompose(m, n, rho_s);

    CollisionParams p = make_params(1.3, 0.15, 0.8, 0, random_hermitian(rng, 3));
    const CollisionEngine engine(p, 3);
    OpenSwitchState brute = initial_open_state(m, n, rho_s);
    for (int k = 1; k <= 12; ++k) {
        brute = engine.step(brute);
        p.n = k;
        CHECK(trace_distance(brute.joint, analytic_state(dec, p).joint) < 1e-8);
    }
}

TEST_CASE("asymptotics: joint state factorizes into system x thermal control") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 35);
    const KrausChannel m = random_channel(rng, 2, 3);
    const KrausChannel n = random_channel(rng, 2, 2);
    const DensityMatrix rho_s = random_density(rng, 2);
    const SwitchDecomposition dec = decompose(m, n, rho_s);

    for (const double beta : {0.0, 1.0, 10.0}) {
        const CollisionParams p = make_params(1.0, 0.2, beta, 2000, test::sigma_z_hamiltonian(1.0));
        const OpenSwitchState late = analytic_state(dec, p);

        const Matrix u_n = evolution_operator(p.h_s, p.tau * p.n);
        const DensityMatrix system =
            DensityMatrix::from(u_n * dec.a_def * u_n.adjoint());
        const DensityMatrix product = DensityMatrix::from(
            tensor(system.matrix(), thermal_qubit(beta, p.omega, Axis::x).matrix()));
        CHECK(trace_distance(late.joint, product) < 1e-6);
    }
}

TEST_CASE("control-traced analytic state is the evolved order mixture for all n") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 36);
    const KrausChannel m = random_channel(rng, 2, 2);
    const KrausChannel n = random_channel(rng, 2, 4);
    const DensityMatrix rho_s = random_density(rng, 2);
    const SwitchDecomposition dec = decompose(m, n, rho_s);

    for (const int steps : {0, 1, 7, 40}) {
        const CollisionParams p = make_params(1.0, 0.2, 0.7, steps, test::sigma_x_hamiltonian(0.9));
        const OpenSwitchState state = analytic_state(dec, p);
        const Matrix system = partial_trace(state.joint.matrix(), {2, 2}, {0});
        const Matrix u_n = evolution_operator(p.h_s, p.tau * steps);
        CHECK(max_abs_diff(system, u_n * dec.a_def * u_n.adjoint()) < 1e-10);
    }
}

TEST_CASE("post_select_open: closed forms and special limits") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 37);
    const KrausChannel id = KrausChannel::identity(2);
    const DensityMatrix rho_s = random_density(rng, 2);
    const SwitchDecomposition trivial = decompose(id, id, rho_s);

    // identity channels, infinite temperature: p(+) = (1 + cos^{2n})/2
    for (const int steps : {0, 1, 5, 20}) {
        const CollisionParams p = make_params(1.0, 0.2, 0.0, steps, Matrix::Zero(2, 2));
        const PostSelection plus = post_select_open(trivial, p, Outcome::plus);
        const double expected = 0.5 * (1.0 + std::pow(std::cos(0.2), 2.0 * steps));
        CHECK(plus.probability == doctest::Approx(expected).epsilon(1e-14));
    }

    // zero temperature: p(-) decays geometrically from its closed value,
    // while the minus-conditioned state never feels the collisions
    const KrausChannel m = random_channel(rng, 2, 3);
    const KrausChannel n = random_channel(rng, 2, 2);
    const DensityMatrix rho = random_density(rng, 2);
    const SwitchDecomposition dec = decompose(m, n, rho);
    const double p0_minus = post_select(dec, Outcome::minus).probability;
    for (const int steps : {1, 10, 50}) {
        const CollisionParams p = make_params(1.0, 0.2, kInf, steps, test::sigma_z_hamiltonian(1.0));
        const PostSelection minus = post_select_open(dec, p, Outcome::minus);
        CHECK(minus.probability ==
              doctest::Approx(std::pow(std::cos(0.2), 2.0 * steps) * p0_minus).epsilon(1e-12));

        REQUIRE(minus.conditional_state.has_value());
        const Matrix u_n = evolution_operator(p.h_s, p.tau * steps);
        const Matrix a_mm_n = u_n * dec.a_mm * u_n.adjoint();
        const DensityMatrix shielded = DensityMatrix::from(a_mm_n / a_mm_n.trace().real());
        CHECK(trace_distance(*minus.conditional_state, shielded) < 1e-10);

        const PostSelection plus = post_select_open(dec, p, Outcome::plus);
        CHECK(plus.probability + minus.probability == doctest::Approx(1.0).epsilon(1e-12));
    }

    // brute-force projection route agrees with the closed form
    CollisionParams p = make_params(1.0, 0.2, 1.0, 0, Matrix::Zero(2, 2));
    const CollisionEngine engine(p, 2);
    OpenSwitchState state = initial_open_state(m, n, rho);
    for (int k = 1; k <= 10; ++k) state = engine.step(state);
    p.n = 10;
    for (const Outcome outcome : {Outcome::plus, Outcome::minus}) {
        const PostSelection closed = post_select_open(dec, p, outcome);
        const PostSelection projected = post_select_open(state, outcome);
        CHECK(std::abs(closed.probability - projected.probability) < 1e-10);
        if (closed.conditional_state && projected.conditional_state) {
            CHECK(trace_distance(*closed.conditional_state, *projected.conditional_state) < 1e-10);
        }
    }
}

TEST_CASE("per-collision first law: control and ancilla energies balance") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 38);
    const KrausChannel m = random_channel(rng, 2, 2);
    const KrausChannel n = random_channel(rng, 2, 3);
    const DensityMatrix rho_s = random_density(rng, 2);
    const CollisionParams p = make_params(1.3, 0.2, 0.6, 0, test::sigma_z_hamiltonian(1.0));
    const CollisionEngine engine(p, 2);

    OpenSwitchState state = initial_open_state(m, n, rho_s);
    CollisionEnergy energy;
    for (int k = 0; k < 30; ++k) {
        state = engine.step(state, &energy);
        CHECK(std::abs(energy.delta_control + energy.delta_environment) < 1e-10);
    }
}
