#pragma once

#include <functional>

#include "transbeam/assembly.hpp"
#include "transbeam/functionals.hpp"

namespace transbeam {

struct StepConfig {
    double dt = 1e-3;
    double newton_tol = 1e-12; ///< relative residual tolerance
    int newton_max_iter = 30;
    double t_end = 1.0;
    int snapshot_every = 100;
};

struct BalanceRecord {
    double t = 0.0;
    double energy_total = 0.0;
    double dissipation_kappa_rate = 0.0; ///< kappa-weighted midpoint velocity quadratic
    double dissipation_gamma_rate = 0.0;
    double work_rate = 0.0;
    double balance_residual = 0.0; ///< defect of the discrete energy identity
    double velocity_norm_W = 0.0;
};

/// First-order form of M Z_tt + C Z_t + F(Z) = load, as consumed by the
/// midpoint stepper. The modal module builds reduced instances.
struct SecondOrderSystem {
    SpMat M, C, C_kappa, C_gamma;
    Vec load;
    std::function<Vec(const Vec&)> force;
    std::function<SpMat(const Vec&)> force_tangent;
    std::function<double(const Vec&)> stored;
};

SecondOrderSystem full_system(const DiscreteSpace& space, const AssembledOperators& ops,
                              const BeamParameters& p);

struct StepOutcome {
    BalanceRecord record;
    int newton_iters = 0;
    double last_residual_ratio = 0.0; ///< final two Newton residual norms
};

/// One implicit midpoint step; Z, V are updated in place. Newton iterates
/// on the end-of-step velocity with the displacement eliminated through
/// the midpoint kinematics.
StepOutcome midpoint_step(const SecondOrderSystem& sys, Vec& Z, Vec& V, double dt,
                          const StepConfig& cfg, double t_now);

std::pair<State, BalanceRecord> step(const DiscreteSpace& space,
                                     const AssembledOperators& ops,
                                     const BeamParameters& p, const State& state,
                                     const StepConfig& cfg, double t_now = 0.0);

struct SimulationSinks {
    std::function<void(const BalanceRecord&, const EnergyBreakdown&, double decay_phi)>
        on_record;
    std::function<void(long step, double t, const State&)> on_snapshot;
};

struct TrajectorySummary {
    State final_state;
    double t_final = 0.0;
    double energy_initial = 0.0;
    double energy_final = 0.0;
    double sum_abs_balance_residual = 0.0;
    double cumulative_dissipation = 0.0;
    double cumulative_work = 0.0;
    double cumulative_balance_defect = 0.0;
    long steps = 0;
    int dt_halvings = 0;
};

/// Advances to t_end, emitting one BalanceRecord per step and snapshots
/// every cfg.snapshot_every steps. On a diverged step the step size is
/// halved once and the step retried; two consecutive failures abort.
TrajectorySummary simulate(const DiscreteSpace& space, const AssembledOperators& ops,
                           const BeamParameters& p, const State& state0,
                           const StepConfig& cfg, const SimulationSinks& sinks = {});

} // namespace transbeam
