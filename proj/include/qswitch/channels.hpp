#pragma once

#include <vector>

#include "qswitch/linalg.hpp"

namespace qswitch {

/// CPTP map as a finite Kraus list. Completeness sum_i K_i^dag K_i = 1 is
/// validated on construction (1e-10 Frobenius).
class KrausChannel {
  public:
    static KrausChannel from(std::vector<Matrix> operators);
    static KrausChannel identity(Eigen::Index dim);

    Eigen::Index dim() const { return dim_; }
    const std::vector<Matrix>& operators() const { return operators_; }

  private:
    KrausChannel(Eigen::Index dim, std::vector<Matrix> operators)
        : dim_(dim), operators_(std::move(operators)) {}
    Eigen::Index dim_;
    std::vector<Matrix> operators_;
};

/// Observable as an explicit projective decomposition. Keeping the
/// projector list explicit makes degenerate spectra and basis phase
/// conventions visible instead of burying them in a Hermitian matrix.
class Observable {
  public:
    static Observable from(std::vector<double> eigenvalues, std::vector<Matrix> projectors);
    static Observable pauli_z();
    static Observable pauli_x();

    Eigen::Index dim() const { return dim_; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    const std::vector<Matrix>& projectors() const { return projectors_; }

    /// Basis kets for a rank-1 decomposition; throws if any projector has
    /// rank != 1. Phases are whatever the eigensolver produced.
    std::vector<Vector> basis_kets() const;

  private:
    Observable(Eigen::Index dim, std::vector<double> eigenvalues, std::vector<Matrix> projectors)
        : dim_(dim), eigenvalues_(std::move(eigenvalues)), projectors_(std::move(projectors)) {}
    Eigen::Index dim_;
    std::vector<double> eigenvalues_;
    std::vector<Matrix> projectors_;
};

/// Measurement strength in [0, 1]; 0 is the identity map, 1 a projective
/// non-selective measurement.
class MonitoringStrength {
  public:
    explicit MonitoringStrength(double value);
    double value() const { return value_; }

    /// Strength of two same-basis monitorings in sequence: e + e' - e e'.
    static MonitoringStrength compose(MonitoringStrength a, MonitoringStrength b);

  private:
    double value_;
};

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

/// Full dephasing in the observable's eigenbasis: rho -> sum_a O_a rho O_a.
KrausChannel dephasing_channel(const Observable& obs);

/// (1 - eps) rho + eps * dephasing(rho), with Kraus set
/// {sqrt(1-eps) 1, sqrt(eps) O_a}.
KrausChannel monitoring_channel(const Observable& obs, MonitoringStrength eps);

/// The four orthogonal unitaries {1, sx, sy, sz}, tr(U_i^dag U_j) = 2 d_ij.
std::vector<Matrix> pauli_unitaries();

/// Kraus set {sqrt(theta_cold/2) U_i} of the switch-powered refrigerator;
/// the U_i must be a qubit orthogonal-unitary set.
KrausChannel fridge_kraus(const DensityMatrix& theta_cold, const std::vector<Matrix>& unitaries);

} // namespace qswitch
