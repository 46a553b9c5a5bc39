#include "qswitch/qswitch_core.hpp"

namespace qswitch {

const char* to_string(Outcome outcome) {
    return outcome == Outcome::plus ? "plus" : "minus";
}

DensityMatrix switch_state(const KrausChannel& m, const KrausChannel& n,
                           const DensityMatrix& rho_s, const DensityMatrix& rho_c) {
    if (m.dim() != n.dim() || m.dim() != rho_s.dim()) {
        throw InvariantError("switch_state: channel/system dimension mismatch");
    }
    if (rho_c.dim() != 2) {
        throw InvariantError("switch_state: control must be a qubit");
    }
    const Eigen::Index d = rho_s.dim();
    const Matrix p0 = projector(ket_zero());
    const Matrix p1 = projector(ket_one());
    const Matrix input = tensor(rho_s.matrix(), rho_c.matrix());

    Matrix out = Matrix::Zero(2 * d, 2 * d);
    for (const Matrix& mi : m.operators()) {
        for (const Matrix& nj : n.operators()) {
            const Matrix w = tensor(mi * nj, p0) + tensor(nj * mi, p1);
            out += w * input * w.adjoint();
        }
    }
    return DensityMatrix::from(std::move(out));
}

SwitchDecomposition decompose(const KrausChannel& m, const KrausChannel& n,
                              const DensityMatrix& rho_s) {
    if (m.dim() != n.dim() || m.dim() != rho_s.dim()) {
        throw InvariantError("decompose: channel/system dimension mismatch");
    }
    const Eigen::Index d = rho_s.dim();
    Matrix a_pp = Matrix::Zero(d, d);
    Matrix a_mm = Matrix::Zero(d, d);
    Matrix a_pm = Matrix::Zero(d, d);
    for (const Matrix& mi : m.operators()) {
        for (const Matrix& nj : n.operators()) {
            const Matrix mn = mi * nj;
            const Matrix nm = nj * mi;
            const Matrix anti = mn + nm;
            const Matrix comm = mn - nm;
            a_pp += anti * rho_s.matrix() * anti.adjoint();
            a_mm += comm * rho_s.matrix() * comm.adjoint();
            a_pm += anti * rho_s.matrix() * comm.adjoint();
        }
    }
    a_pp /= 4.0;
    a_mm /= 4.0;
    a_pm /= 4.0;

    SwitchDecomposition dec;
    dec.a_pp = a_pp;
    dec.a_mm = a_mm;
    dec.a_pm = a_pm;
    dec.a_mp = a_pm.adjoint();
    dec.a_def = a_pp + a_mm;
    dec.a_indef = a_pp - a_mm;
    return dec;
}

DensityMatrix assemble_switch_state(const SwitchDecomposition& dec, const DensityMatrix& rho_c) {
    if (rho_c.dim() != 2) {
        throw InvariantError("assemble_switch_state: control must be a qubit");
    }
    const Matrix sz = pauli_z();
    const Matrix& rc = rho_c.matrix();
    Matrix joint = tensor(dec.a_pp, rc) + tensor(dec.a_pm, rc * sz) +
                   tensor(dec.a_mp, sz * rc) + tensor(dec.a_mm, sz * rc * sz);
    return DensityMatrix::from(std::move(joint));
}

PostSelection post_select(const SwitchDecomposition& dec, Outcome outcome) {
    const Matrix& block = (outcome == Outcome::plus) ? dec.a_pp : dec.a_mm;
    const double p = block.trace().real();
    PostSelection result{outcome, std::max(p, 0.0), std::nullopt};
    if (p >= kProbabilityFloor) {
        result.conditional_state = DensityMatrix::from(block / p);
    }
    return result;
}

PostSelection post_select_control(const DensityMatrix& joint, Outcome outcome) {
    if (joint.dim() % 2 != 0) {
        throw InvariantError("post_select_control: joint dimension is not system x qubit");
    }
    const Eigen::Index d = joint.dim() / 2;
    const Vector ket = (outcome == Outcome::plus) ? ket_plus() : ket_minus();
    const Matrix pc = tensor(Matrix::Identity(d, d), projector(ket));
    const Matrix projected = pc * joint.matrix() * pc;
    const double p = projected.trace().real();
    PostSelection result{outcome, std::max(p, 0.0), std::nullopt};
    if (p >= kProbabilityFloor) {
        const Matrix system = partial_trace(projected / p, {d, 2}, {0});
        result.conditional_state = DensityMatrix::from(system);
    }
    return result;
}

} // namespace qswitch
