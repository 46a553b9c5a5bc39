#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qswitch/errors.hpp"

namespace qswitch {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Everything in this library is small
/// (at most a few hundred rows), so there is no sparse path.
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerances shared across the library. Hermiticity is checked entrywise,
// positivity on eigenvalues; both sit just above the double-precision
// eigendecomposition noise floor.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kHermitianLooseTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kProbabilityFloor = 1e-12;

Matrix identity(Eigen::Index dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

Vector ket_zero();
Vector ket_one();
Vector ket_plus();
Vector ket_minus();

/// |a><b|
Matrix ketbra(const Vector& a, const Vector& b);
/// |k><k|
Matrix projector(const Vector& ket);

/// Max entrywise deviation from m = m^dagger.
double hermiticity_error(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermitianLooseTol);

/// Kronecker product; dims multiply, (a (x) b)(c (x) d) = ac (x) bd.
Matrix tensor(const Matrix& a, const Matrix& b);

/// Trace over the subsystems NOT listed in `keep`. `dims` are the factor
/// dimensions in tensor order and must multiply to the matrix dimension.
/// `keep` may be empty, in which case the result is the 1x1 total trace.
Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<Eigen::Index>& keep);

struct HermitianEigenSystem {
    RealVector eigenvalues; // ascending
    Matrix eigenvectors;    // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Throws InvariantError if the
/// input deviates from Hermiticity by more than 1e-10 entrywise.
HermitianEigenSystem hermitian_eigen(const Matrix& m);

/// f applied to the eigenvalues in the eigenbasis; input must be Hermitian.
/// Throws NumericalError if f produces a non-finite value on an eigenvalue.
Matrix matrix_function(const Matrix& m, const std::function<double(double)>& f);

/// Square root of a positive-semidefinite matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything more negative throws.
Matrix matrix_sqrt_psd(const Matrix& m);

/// exp(-i t H) for Hermitian H.
Matrix evolution_operator(const Matrix& hamiltonian, double t);

/// Hermitian, unit-trace, positive-semidefinite matrix. Validated on
/// construction: Hermitian within 1e-12 entrywise, trace 1 within 1e-12,
/// smallest eigenvalue >= -1e-10.
class DensityMatrix {
  public:
    static DensityMatrix from(Matrix m);
    static DensityMatrix pure(const Vector& ket);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// -tr(rho ln rho) in nats, with 0 ln 0 := 0. Eigenvalues within 1e-12 of
/// [0, 1] are clamped to the boundary.
double von_neumann_entropy(const DensityMatrix& rho);

/// (1/2) sum |eig(a - b)|. Symmetric, zero iff equal.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

} // namespace qswitch
