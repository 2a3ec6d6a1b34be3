#pragma once

#include "transbeam/timestepper.hpp"

namespace transbeam {

struct StationaryPoint {
    Vec Z;
    double residual_norm = 0.0;
    int newton_iters = 0;
};

/// Newton with Armijo backtracking on the squared residual norm. When the
/// plain iteration from a zero guess diverges, the load is applied in 10
/// uniform increments before giving up.
StationaryPoint solve_stationary(const DiscreteSpace& space,
                                 const AssembledOperators& ops, const BeamParameters& p,
                                 const Vec& Z_guess, double tol, int max_iter);

/// H-distance between a state and a stationary point (which carries zero
/// velocity).
double distance_to_stationary(const DiscreteSpace& space, const BeamParameters& p,
                              const State& state, const StationaryPoint& point);

struct GradientReport {
    double final_velocity_norm_W = 0.0;
    double final_lyapunov = 0.0;
    StationaryPoint stationary;
    double h_distance = 0.0;
};

/// Polishes the final displacement of a completed long-horizon run into a
/// stationary point and reports the distance diagnostics of the
/// stabilization property. Requires g2 = g4 = 0.
GradientReport gradient_diagnostic(const DiscreteSpace& space,
                                   const AssembledOperators& ops,
                                   const BeamParameters& p, const Forcing& f,
                                   const TrajectorySummary& run, double tol,
                                   int max_iter);

} // namespace transbeam
