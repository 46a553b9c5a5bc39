#include "helpers.hpp"

#include <cmath>

#include "qswitch/qswitch_core.hpp"

using namespace qswitch;
using qswitch::test::max_abs_diff;

namespace {

KrausChannel monitoring_z(double eps) {
    return monitoring_channel(Observable::pauli_z(), MonitoringStrength(eps));
}

KrausChannel monitoring_x(double eps) {
    return monitoring_channel(Observable::pauli_x(), MonitoringStrength(eps));
}

} // namespace

TEST_CASE("switch_state: definite order branch for |0> control") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 20);
    const KrausChannel m = random_channel(rng, 2, 3);
    const KrausChannel n = random_channel(rng, 2, 2);
    const DensityMatrix rho_s = random_density(rng, 2);

    const DensityMatrix joint = switch_state(m, n, rho_s, DensityMatrix::pure(ket_zero()));
    // control |0>: N acts first, then M; the joint factorizes
    const DensityMatrix expected_sys = apply_channel(m, apply_channel(n, rho_s));
    const Matrix expected = tensor(expected_sys.matrix(), projector(ket_zero()));
    CHECK(max_abs_diff(joint.matrix(), expected) < 1e-12);
}

TEST_CASE("switch_state: identity channels leave any control untouched") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 21);
    const KrausChannel id = KrausChannel::identity(2);
    const DensityMatrix rho_s = random_density(rng, 2);
    const DensityMatrix plus = DensityMatrix::pure(ket_plus());
    const DensityMatrix joint = switch_state(id, id, rho_s, plus);
    CHECK(max_abs_diff(joint.matrix(), tensor(rho_s.matrix(), plus.matrix())) < 1e-12);

    CHECK_THROWS_AS(switch_state(id, KrausChannel::identity(3), rho_s, plus), InvariantError);
    CHECK_THROWS_AS(switch_state(id, id, rho_s, DensityMatrix::maximally_mixed(3)),
                    InvariantError);
}

TEST_CASE("switch_state: MUB dephasings on |+> leave a maximally mixed marginal") {
    const KrausChannel phi_z = dephasing_channel(Observable::pauli_z());
    const KrausChannel phi_x = dephasing_channel(Observable::pauli_x());
    const DensityMatrix plus = DensityMatrix::pure(ket_plus());
    const DensityMatrix joint = switch_state(phi_z, phi_x, plus, plus);
    const Matrix system = partial_trace(joint.matrix(), {2, 2}, {0});
    CHECK(max_abs_diff(system, identity(2) / 2.0) < 1e-12);
}

TEST_CASE("decompose: identity case and vanishing commutators") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 22);
    const DensityMatrix rho_s = random_density(rng, 2);
    const KrausChannel id = KrausChannel::identity(2);
    const SwitchDecomposition dec = decompose(id, id, rho_s);
    CHECK(max_abs_diff(dec.a_def, rho_s.matrix()) < 1e-14);
    CHECK(max_abs_diff(dec.a_indef, rho_s.matrix()) < 1e-14);
    CHECK(dec.tr_a_indef() == doctest::Approx(1.0).epsilon(1e-14));

    // commuting channels: every commutator vanishes
    const KrausChannel phi_z = dephasing_channel(Observable::pauli_z());
    const SwitchDecomposition commuting = decompose(phi_z, phi_z, rho_s);
    CHECK(commuting.a_mm.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(commuting.a_pm.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(commuting.a_mp.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("decompose: strong MUB monitorings halve the interference trace") {
    const SwitchDecomposition dec =
        decompose(monitoring_z(1.0), monitoring_x(1.0), DensityMatrix::pure(ket_plus()));
    CHECK(dec.tr_a_indef() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("decompose invariants on random channel pairs") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 23);
    for (int i = 0; i < 25; ++i) {
        std::uniform_int_distribution<int> kraus_count(1, 4);
        const KrausChannel m = random_channel(rng, 2, kraus_count(rng));
        const KrausChannel n = random_channel(rng, 2, kraus_count(rng));
        const DensityMatrix rho_s = random_density(rng, 2);
        const SwitchDecomposition dec = decompose(m, n, rho_s);

        CHECK(max_abs_diff(dec.a_pp + dec.a_mm, dec.a_def) < 1e-12);
        CHECK(max_abs_diff(dec.a_pp - dec.a_mm, dec.a_indef) < 1e-12);
        CHECK(max_abs_diff(dec.a_mp, dec.a_pm.adjoint()) < 1e-12);
        CHECK(std::abs(dec.a_def.trace().real() - 1.0) < 1e-10);

        // a_pp, a_mm are positive semidefinite
        for (const Matrix* block : {&dec.a_pp, &dec.a_mm}) {
            const HermitianEigenSystem es = hermitian_eigen(*block);
            CHECK(es.eigenvalues.minCoeff() > -1e-10);
        }

        // assembly identity a_pm_pm = a_def/2 +- a_indef/2
        CHECK(max_abs_diff(dec.a_pp, 0.5 * dec.a_def + 0.5 * dec.a_indef) < 1e-12);
        CHECK(max_abs_diff(dec.a_mm, 0.5 * dec.a_def - 0.5 * dec.a_indef) < 1e-12);
    }
}

TEST_CASE("assemble_switch_state equals the controlled-Kraus sum for any control") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 24);
    for (int i = 0; i < 15; ++i) {
        std::uniform_int_distribution<int> kraus_count(1, 4);
        const KrausChannel m = random_channel(rng, 2, kraus_count(rng));
        const KrausChannel n = random_channel(rng, 2, kraus_count(rng));
        const DensityMatrix rho_s = random_density(rng, 2);
        const DensityMatrix rho_c = random_density(rng, 2);

        const DensityMatrix direct = switch_state(m, n, rho_s, rho_c);
        const DensityMatrix assembled = assemble_switch_state(decompose(m, n, rho_s), rho_c);
        CHECK(max_abs_diff(direct.matrix(), assembled.matrix()) < 1e-12);
    }
}

TEST_CASE("control marginal: mixture of the two orders, diagonal control stays diagonal") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 25);
    const KrausChannel m = random_channel(rng, 2, 3);
    const KrausChannel n = random_channel(rng, 2, 3);
    const DensityMatrix rho_s = random_density(rng, 2);

    const DensityMatrix joint = switch_state(m, n, rho_s, DensityMatrix::pure(ket_plus()));
    const Matrix system = partial_trace(joint.matrix(), {2, 2}, {0});
    const Matrix mn = apply_channel(m, apply_channel(n, rho_s)).matrix();
    const Matrix nm = apply_channel(n, apply_channel(m, rho_s)).matrix();
    CHECK(max_abs_diff(system, 0.5 * (mn + nm)) < 1e-10);

    // sigma_z-incoherent control in -> sigma_z-incoherent control out
    Matrix diag_control = Matrix::Zero(2, 2);
    diag_control(0, 0) = 0.3;
    diag_control(1, 1) = 0.7;
    const DensityMatrix joint_diag =
        switch_state(m, n, rho_s, DensityMatrix::from(diag_control));
    const Matrix control = partial_trace(joint_diag.matrix(), {2, 2}, {1});
    CHECK(std::abs(control(0, 1)) < 1e-12);
    CHECK(std::abs(control(1, 0)) < 1e-12);
}

TEST_CASE("post_select: probabilities and conditional states") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 26);
    const KrausChannel id = KrausChannel::identity(2);
    const DensityMatrix rho_s = random_density(rng, 2);

    const SwitchDecomposition trivial = decompose(id, id, rho_s);
    const PostSelection plus = post_select(trivial, Outcome::plus);
    const PostSelection minus = post_select(trivial, Outcome::minus);
    CHECK(plus.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(minus.probability == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(plus.conditional_state.has_value());
    CHECK_FALSE(minus.conditional_state.has_value());

    // strong MUB monitorings on |+>: p(-) = (1 - 1/2)/2 = 1/4
    const SwitchDecomposition mub =
        decompose(monitoring_z(1.0), monitoring_x(1.0), DensityMatrix::pure(ket_plus()));
    CHECK(post_select(mub, Outcome::minus).probability == doctest::Approx(0.25).epsilon(1e-12));

    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<int> kraus_count(1, 4);
        const KrausChannel m = random_channel(rng, 2, kraus_count(rng));
        const KrausChannel n = random_channel(rng, 2, kraus_count(rng));
        const SwitchDecomposition dec = decompose(m, n, random_density(rng, 2));
        const double total = post_select(dec, Outcome::plus).probability +
                             post_select(dec, Outcome::minus).probability;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("post_select_control agrees with the decomposition route") {
    RandomEngine rng = seeded_engine(test::kTestSeed, 27);
    for (int i = 0; i < 10; ++i) {
        const KrausChannel m = random_channel(rng, 2, 2);
        const KrausChannel n = random_channel(rng, 2, 3);
        const DensityMatrix rho_s = random_density(rng, 2);
        const SwitchDecomposition dec = decompose(m, n, rho_s);
        const DensityMatrix joint = switch_state(m, n, rho_s, DensityMatrix::pure(ket_plus()));

        for (const Outcome outcome : {Outcome::plus, Outcome::minus}) {
            const PostSelection from_dec = post_select(dec, outcome);
            const PostSelection from_joint = post_select_control(joint, outcome);
            CHECK(std::abs(from_dec.probability - from_joint.probability) < 1e-12);
            if (from_dec.conditional_state && from_joint.conditional_state) {
                CHECK(trace_distance(*from_dec.conditional_state, *from_joint.conditional_state) <
                      1e-10);
            }
        }
    }
}
