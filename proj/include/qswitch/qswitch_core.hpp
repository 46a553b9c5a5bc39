#pragma once

#include <optional>

#include "qswitch/channels.hpp"
#include "qswitch/linalg.hpp"

namespace qswitch {

/// Control post-selection basis label: the +/- eigenstates of sigma_x.
enum class Outcome { plus, minus };

const char* to_string(Outcome outcome);

/// The four system operators of the switch joint state, indexed by
/// (anti)commutator choice on left and right:
///   a_xy = (1/4) sum_ij [M_i, N_j]_x rho_S [M_i, N_j]_y^dag,
/// plus the definite/indefinite-order combinations
///   a_def = a_pp + a_mm, a_indef = a_pp - a_mm.
/// a_def collects the mixture of the two causal orders; a_indef the
/// interference between them.
struct SwitchDecomposition {
    Matrix a_pp;
    Matrix a_pm;
    Matrix a_mp;
    Matrix a_mm;
    Matrix a_def;
    Matrix a_indef;

    double tr_a_indef() const { return a_indef.trace().real(); }
};

/// Post-selection result. When the outcome probability falls below the
/// 1e-12 floor the conditional state is left empty rather than normalized
/// against noise.
struct PostSelection {
    Outcome outcome;
    double probability;
    std::optional<DensityMatrix> conditional_state;
};

/// Joint system-control state of the switch of channels m and n:
///   sum_ij W_ij (rho_s (x) rho_c) W_ij^dag,
///   W_ij = M_i N_j (x) |0><0| + N_j M_i (x) |1><1|.
/// System factor first, control qubit second.
DensityMatrix switch_state(const KrausChannel& m, const KrausChannel& n,
                           const DensityMatrix& rho_s, const DensityMatrix& rho_c);

/// A-operator decomposition, computed directly from the commutator and
/// anticommutator sums (never via the 2 d_S-dimensional joint state).
SwitchDecomposition decompose(const KrausChannel& m, const KrausChannel& n,
                              const DensityMatrix& rho_s);

/// Assembles the joint state from a decomposition for arbitrary control
/// states: a_pp (x) rho_c + a_pm (x) rho_c sz + a_mp (x) sz rho_c
/// + a_mm (x) sz rho_c sz. Equal to switch_state on the same inputs.
DensityMatrix assemble_switch_state(const SwitchDecomposition& dec, const DensityMatrix& rho_c);

/// Post-selection of the |+><+|-control switch: probability tr(a_{+-+-}),
/// conditional state a/tr(a).
PostSelection post_select(const SwitchDecomposition& dec, Outcome outcome);

/// Measures the control qubit (rightmost tensor factor) of a joint state
/// in the |+>/|-> basis and conditions the system on the outcome.
PostSelection post_select_control(const DensityMatrix& joint, Outcome outcome);

} // namespace qswitch
