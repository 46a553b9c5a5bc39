#include "qswitch/channels.hpp"

#include <cmath>
#include <string>

namespace qswitch {

KrausChannel KrausChannel::from(std::vector<Matrix> operators) {
    if (operators.empty()) {
        throw InvariantError("KrausChannel: operator list is empty");
    }
    const Eigen::Index d = operators.front().rows();
    for (const Matrix& k : operators) {
        if (k.rows() != d || k.cols() != d) {
            throw InvariantError("KrausChannel: operators must be square with equal dims");
        }
    }
    Matrix completeness = Matrix::Zero(d, d);
    for (const Matrix& k : operators) completeness += k.adjoint() * k;
    const double err = (completeness - Matrix::Identity(d, d)).norm();
    if (err > kHermitianLooseTol) {
        throw InvariantError("KrausChannel: CPTP completeness violated by " + std::to_string(err));
    }
    return KrausChannel(d, std::move(operators));
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
    return KrausChannel::from({Matrix::Identity(dim, dim)});
}

Observable Observable::from(std::vector<double> eigenvalues, std::vector<Matrix> projectors) {
    if (projectors.empty() || eigenvalues.size() != projectors.size()) {
        throw InvariantError("Observable: need one eigenvalue per projector");
    }
    const Eigen::Index d = projectors.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < projectors.size(); ++a) {
        const Matrix& p = projectors[a];
        if (p.rows() != d || p.cols() != d) {
            throw InvariantError("Observable: projectors must share one dimension");
        }
        if (hermiticity_error(p) > kHermitianLooseTol) {
            throw InvariantError("Observable: projector is not Hermitian");
        }
        for (std::size_t b = 0; b < projectors.size(); ++b) {
            const Matrix prod = p * projectors[b];
            const Matrix expected = (a == b) ? p : Matrix::Zero(d, d);
            if ((prod - expected).cwiseAbs().maxCoeff() > kHermitianLooseTol) {
                throw InvariantError("Observable: projectors are not orthogonal idempotents");
            }
        }
        sum += p;
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kHermitianLooseTol) {
        throw InvariantError("Observable: projectors do not resolve the identity");
    }
    return Observable(d, std::move(eigenvalues), std::move(projectors));
}

Observable Observable::pauli_z() {
    return Observable::from({1.0, -1.0}, {projector(ket_zero()), projector(ket_one())});
}

Observable Observable::pauli_x() {
    return Observable::from({1.0, -1.0}, {projector(ket_plus()), projector(ket_minus())});
}

std::vector<Vector> Observable::basis_kets() const {
    std::vector<Vector> kets;
    kets.reserve(projectors_.size());
    for (const Matrix& p : projectors_) {
        const HermitianEigenSystem es = hermitian_eigen(p);
        Eigen::Index unit_index = -1;
        for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
            const double lambda = es.eigenvalues[k];
            if (std::abs(lambda - 1.0) < 1e-8) {
                if (unit_index >= 0) throw InvariantError("Observable: projector has rank > 1");
                unit_index = k;
            } else if (std::abs(lambda) > 1e-8) {
                throw InvariantError("Observable: projector spectrum is not {0, 1}");
            }
        }
        if (unit_index < 0) throw InvariantError("Observable: projector has rank 0");
        kets.push_back(es.eigenvectors.col(unit_index));
    }
    return kets;
}

MonitoringStrength::MonitoringStrength(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw InvariantError("MonitoringStrength: value " + std::to_string(value) +
                             " outside [0, 1]");
    }
}

MonitoringStrength MonitoringStrength::compose(MonitoringStrength a, MonitoringStrength b) {
    return MonitoringStrength(a.value_ + b.value_ - a.value_ * b.value_);
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
    if (channel.dim() != rho.dim()) {
        throw InvariantError("apply_channel: dimension mismatch");
    }
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    for (const Matrix& k : channel.operators()) {
        out += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix::from(std::move(out));
}

KrausChannel dephasing_channel(const Observable& obs) {
    return KrausChannel::from(obs.projectors());
}

KrausChannel monitoring_channel(const Observable& obs, MonitoringStrength eps) {
    std::vector<Matrix> ops;
    ops.reserve(obs.projectors().size() + 1);
    ops.push_back(std::sqrt(1.0 - eps.value()) * Matrix::Identity(obs.dim(), obs.dim()));
    for (const Matrix& p : obs.projectors()) {
        ops.push_back(std::sqrt(eps.value()) * p);
    }
    return KrausChannel::from(std::move(ops));
}

std::vector<Matrix> pauli_unitaries() {
    return {identity(2), pauli_x(), pauli_y(), pauli_z()};
}

KrausChannel fridge_kraus(const DensityMatrix& theta_cold, const std::vector<Matrix>& unitaries) {
    if (theta_cold.dim() != 2) {
        throw InvariantError("fridge_kraus: working substance must be a qubit");
    }
    if (unitaries.size() != 4) {
        throw InvariantError("fridge_kraus: need 4 orthogonal unitaries");
    }
    for (std::size_t i = 0; i < unitaries.size(); ++i) {
        const Matrix& u = unitaries[i];
        if (u.rows() != 2 || u.cols() != 2 ||
            (u.adjoint() * u - Matrix::Identity(2, 2)).norm() > kHermitianLooseTol) {
            throw InvariantError("fridge_kraus: entry " + std::to_string(i) + " is not a qubit unitary");
        }
        for (std::size_t j = 0; j < unitaries.size(); ++j) {
            const Complex overlap = (unitaries[i].adjoint() * unitaries[j]).trace();
            const Complex expected = (i == j) ? Complex{2.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(overlap - expected) > kHermitianLooseTol) {
                throw InvariantError("fridge_kraus: unitaries fail tr(Ui^dag Uj) = 2 delta_ij");
            }
        }
    }
    const Matrix root = matrix_sqrt_psd(theta_cold.matrix() / 2.0);
    std::vector<Matrix> ops;
    ops.reserve(unitaries.size());
    for (const Matrix& u : unitaries) ops.push_back(root * u);
    return KrausChannel::from(std::move(ops));
}

} // namespace qswitch
