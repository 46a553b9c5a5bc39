#pragma once

#include <cstdint>
#include <random>

#include "qswitch/channels.hpp"

namespace qswitch {

using RandomEngine = std::mt19937_64;

/// Deterministic per-task engine: mixes a base seed with a stream index so
/// grid cells can draw independently regardless of evaluation order.
RandomEngine seeded_engine(std::uint64_t seed, std::uint64_t stream = 0);

Matrix random_ginibre(RandomEngine& rng, Eigen::Index rows, Eigen::Index cols);
Matrix random_hermitian(RandomEngine& rng, Eigen::Index dim);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fixing).
Matrix random_unitary(RandomEngine& rng, Eigen::Index dim);

DensityMatrix random_density(RandomEngine& rng, Eigen::Index dim);
Vector random_ket(RandomEngine& rng, Eigen::Index dim);

/// Random CPTP channel with `kraus_count` operators, carved from a Haar
/// isometry so completeness holds to machine precision.
KrausChannel random_channel(RandomEngine& rng, Eigen::Index dim, int kraus_count);

} // namespace qswitch
