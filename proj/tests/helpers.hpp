#pragma once

#include <doctest.h>

#include "qswitch/random.hpp"

namespace qswitch::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix sigma_x_hamiltonian(double omega) { return -0.5 * omega * pauli_x(); }
inline Matrix sigma_z_hamiltonian(double omega) { return -0.5 * omega * pauli_z(); }

// One fixed seed for the whole unit suite; every test derives its own
// stream so the draws stay independent of test order.
inline constexpr std::uint64_t kTestSeed = 0x51ab5eedULL;

} // namespace qswitch::test
