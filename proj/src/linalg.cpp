#include "qswitch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qswitch {

namespace {

const Complex kI{0.0, 1.0};

} // namespace

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Vector ket_zero() {
    Vector v(2);
    v << 1, 0;
    return v;
}

Vector ket_one() {
    Vector v(2);
    v << 0, 1;
    return v;
}

Vector ket_plus() {
    Vector v(2);
    v << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    return v;
}

Vector ket_minus() {
    Vector v(2);
    v << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    return v;
}

Matrix ketbra(const Vector& a, const Vector& b) { return a * b.adjoint(); }

Matrix projector(const Vector& ket) { return ketbra(ket, ket); }

double hermiticity_error(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw InvariantError("hermiticity_error: matrix is not square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<Eigen::Index>& keep) {
    if (m.rows() != m.cols()) {
        throw InvariantError("partial_trace: matrix is not square");
    }
    Eigen::Index total = 1;
    for (Eigen::Index d : dims) {
        if (d < 1) throw InvariantError("partial_trace: subsystem dims must be positive");
        total *= d;
    }
    if (total != m.rows()) {
        throw InvariantError("partial_trace: subsystem dims do not multiply to matrix dim");
    }

    const auto n_sub = static_cast<Eigen::Index>(dims.size());
    std::vector<bool> kept(dims.size(), false);
    for (Eigen::Index k : keep) {
        if (k < 0 || k >= n_sub) throw InvariantError("partial_trace: keep index out of range");
        if (kept[static_cast<std::size_t>(k)]) {
            throw InvariantError("partial_trace: duplicate keep index");
        }
        kept[static_cast<std::size_t>(k)] = true;
    }

    Eigen::Index kept_dim = 1;
    for (Eigen::Index s = 0; s < n_sub; ++s) {
        if (kept[static_cast<std::size_t>(s)]) kept_dim *= dims[static_cast<std::size_t>(s)];
    }

    // Split every full index into its kept / traced components once.
    std::vector<Eigen::Index> kept_part(static_cast<std::size_t>(total));
    std::vector<Eigen::Index> traced_part(static_cast<std::size_t>(total));
    for (Eigen::Index idx = 0; idx < total; ++idx) {
        Eigen::Index rem = idx, kp = 0, tp = 0;
        for (Eigen::Index s = 0; s < n_sub; ++s) {
            Eigen::Index stride = 1;
            for (Eigen::Index t = s + 1; t < n_sub; ++t) stride *= dims[static_cast<std::size_t>(t)];
            const Eigen::Index component = rem / stride;
            rem %= stride;
            if (kept[static_cast<std::size_t>(s)]) {
                kp = kp * dims[static_cast<std::size_t>(s)] + component;
            } else {
                tp = tp * dims[static_cast<std::size_t>(s)] + component;
            }
        }
        kept_part[static_cast<std::size_t>(idx)] = kp;
        traced_part[static_cast<std::size_t>(idx)] = tp;
    }

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (Eigen::Index r = 0; r < total; ++r) {
        for (Eigen::Index c = 0; c < total; ++c) {
            if (traced_part[static_cast<std::size_t>(r)] != traced_part[static_cast<std::size_t>(c)]) continue;
            out(kept_part[static_cast<std::size_t>(r)], kept_part[static_cast<std::size_t>(c)]) += m(r, c);
        }
    }
    return out;
}

HermitianEigenSystem hermitian_eigen(const Matrix& m) {
    if (!is_hermitian(m, kHermitianLooseTol)) {
        throw InvariantError("hermitian_eigen: input deviates from Hermiticity by " +
                             std::to_string(hermiticity_error(m)));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian_eigen: eigensolver failed to converge");
    }
    return HermitianEigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f) {
    const HermitianEigenSystem es = hermitian_eigen(m);
    RealVector mapped(es.eigenvalues.size());
    for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
        const double y = f(es.eigenvalues[k]);
        if (!std::isfinite(y)) {
            throw NumericalError("matrix_function: f undefined on eigenvalue " +
                                 std::to_string(es.eigenvalues[k]));
        }
        mapped[k] = y;
    }
    return es.eigenvectors * mapped.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
}

Matrix matrix_sqrt_psd(const Matrix& m) {
    return matrix_function(m, [](double x) {
        if (x < -kPositivityTol) {
            return std::numeric_limits<double>::quiet_NaN(); // rejected by matrix_function
        }
        return std::sqrt(std::max(x, 0.0));
    });
}

Matrix evolution_operator(const Matrix& hamiltonian, double t) {
    const HermitianEigenSystem es = hermitian_eigen(hamiltonian);
    Vector phases(es.eigenvalues.size());
    for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
        phases[k] = std::polar(1.0, -t * es.eigenvalues[k]);
    }
    return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

DensityMatrix DensityMatrix::from(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvariantError("DensityMatrix: matrix must be square and nonempty");
    }
    const double herm = hermiticity_error(m);
    if (herm > kHermitianTol) {
        throw InvariantError("DensityMatrix: Hermiticity violated by " + std::to_string(herm));
    }
    const double trace_err = std::abs(m.trace() - Complex{1.0, 0.0});
    if (trace_err > kHermitianTol) {
        throw InvariantError("DensityMatrix: trace deviates from 1 by " + std::to_string(trace_err));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("DensityMatrix: eigensolver failed");
    }
    if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
        throw InvariantError("DensityMatrix: negative eigenvalue " +
                             std::to_string(solver.eigenvalues().minCoeff()));
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
    const double norm = ket.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw InvariantError("DensityMatrix::pure: ket is not normalized");
    }
    return DensityMatrix(projector(ket));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    if (dim < 1) throw InvariantError("DensityMatrix::maximally_mixed: dim must be positive");
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("von_neumann_entropy: eigensolver failed");
    }
    double s = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        double lambda = solver.eigenvalues()[k];
        if (lambda < -kPositivityTol) {
            throw InvariantError("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                                 " below positivity tolerance");
        }
        lambda = std::clamp(lambda, 0.0, 1.0);
        if (lambda > 0.0) s -= lambda * std::log(lambda);
    }
    return s;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw InvariantError("trace_distance: dimension mismatch");
    }
    const Matrix diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("trace_distance: eigensolver failed");
    }
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace qswitch
