#pragma once

#include "transbeam/fem.hpp"

namespace transbeam {

/// Energy components as raw integrals; total recombines them with the
/// factor 1/2 of the energy identity. lyapunov subtracts the work of the
/// forcing against the displacements.
struct EnergyBreakdown {
    double kinetic_transverse = 0.0;   ///< beta1 int phi_t^2 + beta2 int u_t^2
    double kinetic_rotational = 0.0;   ///< mu1 int phi_tx^2 + mu2 int u_tx^2
    double kinetic_longitudinal = 0.0; ///< rho1 int omega_t^2 + rho2 int v_t^2
    double bending = 0.0;              ///< lambda1 int phi_xx^2 + lambda2 int u_xx^2
    double q1 = 0.0;                   ///< membrane functional, damped segment
    double q2 = 0.0;                   ///< membrane functional, undamped segment
    double total = 0.0;
    double lyapunov = 0.0;
};

/// Q1 = int_0^L0 (omega_x + phi_x^2/2)^2, Q2 = int_L0^L (v_x + u_x^2/2)^2.
std::pair<double, double> q_functionals(const DiscreteSpace& space, const Vec& Z);

EnergyBreakdown energy(const DiscreteSpace& space, const BeamParameters& p,
                       const State& state);
EnergyBreakdown energy(const DiscreteSpace& space, const BeamParameters& p,
                       const State& state, const Vec& load);

/// Decay functional of the difference-trajectory estimate: kinetic terms
/// plus bending plus the plain first-derivative longitudinal integrals.
double decay_phi(const DiscreteSpace& space, const BeamParameters& p, const State& state);

/// Cross term coupling two trajectories against their difference; the six
/// integrals pair first derivatives of the trajectories with the
/// difference fields and the difference velocity derivatives.
double cross_term_H(const DiscreteSpace& space, const State& a, const State& b,
                    const State& diff);

double state_norm_H_sq(const DiscreteSpace& space, const BeamParameters& p,
                       const State& state);
double state_norm_H(const DiscreteSpace& space, const BeamParameters& p,
                    const State& state);

/// ||(transverse, longitudinal)||^2_{H1} / (Q + ||transverse||^4_{H2}),
/// both glued across the interface. Diagnostic for the quartic coercivity
/// bound; throws ZERO_DENOMINATOR on the zero state.
double lemma1_ratio(const DiscreteSpace& space, const State& state);

/// |lambda1 phi_xx(L0-) - lambda2 u_xx(L0+)| of a displacement vector.
double interface_moment_defect(const DiscreteSpace& space, const BeamParameters& p,
                               const Vec& Z);

/// |lambda1 phi_xxx(L0-) - lambda2 u_xxx(L0+)| from the element-interior
/// cubics; a weak diagnostic, not a strong claim.
double interface_flux_defect(const DiscreteSpace& space, const BeamParameters& p,
                             const Vec& Z);

} // namespace transbeam
