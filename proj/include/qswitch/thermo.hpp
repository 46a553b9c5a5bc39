#pragma once

#include "qswitch/collisions.hpp"

namespace qswitch {

/// Thermodynamic bookkeeping between two points of a collision chain.
/// All entropies are in nats; entropy_production is stored as
/// entropy_change - entropy_flux by construction.
struct ThermoReport {
    double heat_to_control;    // energy flowed into the control
    double entropy_change;     // S(joint_final) - S(joint_initial)
    double entropy_flux;       // beta_E * heat
    double entropy_production; // entropy_change - entropy_flux
};

/// Closed-form heat absorbed by the control over n collisions:
///   (omega/2) [ (b_def^-(n) - 1) + (b_indef^-(n) + 1) tr(a_indef) ].
double heat_to_control(const BCoefficients& b, double omega, double tr_a_indef);
double heat_to_control(const SwitchDecomposition& dec, const CollisionParams& p);

/// Entropy production between two states of the same collision lineage,
/// using the joint-state entropies and the control-energy heat flow.
ThermoReport entropy_production(const OpenSwitchState& initial, const OpenSwitchState& final_state,
                                const CollisionParams& p);

/// ln d - S(rho): how much of the state's capacity is still sharp.
double available_information(const DensityMatrix& rho);

/// Relative entropy of coherence in the observable's eigenbasis:
/// S(dephased rho) - S(rho).
double coherence_relative_entropy(const Observable& obs, const DensityMatrix& rho);

} // namespace qswitch
