#include "qswitch/random.hpp"

#include <cmath>

namespace qswitch {

RandomEngine seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 of the pair, so nearby (seed, stream) values decorrelate.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return RandomEngine(z);
}

Matrix random_ginibre(RandomEngine& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = Complex{gauss(rng), gauss(rng)};
        }
    }
    return m;
}

Matrix random_hermitian(RandomEngine& rng, Eigen::Index dim) {
    const Matrix g = random_ginibre(rng, dim, dim);
    return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(RandomEngine& rng, Eigen::Index dim) {
    const Matrix g = random_ginibre(rng, dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Complex diag = r(k, k);
        if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

DensityMatrix random_density(RandomEngine& rng, Eigen::Index dim) {
    const Matrix g = random_ginibre(rng, dim, dim);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Symmetrize away the last bits of rounding so the strict constructor
    // tolerances are met.
    rho = 0.5 * (rho + Matrix(rho.adjoint()));
    return DensityMatrix::from(std::move(rho));
}

Vector random_ket(RandomEngine& rng, Eigen::Index dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex{gauss(rng), gauss(rng)};
    v.normalize();
    return v;
}

KrausChannel random_channel(RandomEngine& rng, Eigen::Index dim, int kraus_count) {
    if (kraus_count < 1) throw InvariantError("random_channel: need at least one Kraus operator");
    const Eigen::Index stacked = dim * kraus_count;
    const Matrix g = random_ginibre(rng, stacked, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix isometry = qr.householderQ() * Matrix::Identity(stacked, dim);
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(kraus_count));
    for (int k = 0; k < kraus_count; ++k) {
        ops.push_back(isometry.block(k * dim, 0, dim, dim));
    }
    return KrausChannel::from(std::move(ops));
}

} // namespace qswitch
