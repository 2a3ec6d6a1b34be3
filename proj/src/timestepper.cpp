#include "transbeam/timestepper.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>

#include "transbeam/errors.hpp"

namespace transbeam {

SecondOrderSystem full_system(const DiscreteSpace& space, const AssembledOperators& ops,
                              const BeamParameters& p) {
    SecondOrderSystem sys;
    sys.M = ops.M;
    sys.C = ops.C;
    sys.C_kappa = ops.C_kappa;
    sys.C_gamma = ops.C_gamma;
    sys.load = ops.load;
    const MembraneCoupling coupling = ops.coupling;
    sys.force = [&space, &p, coupling](const Vec& Z) {
        return internal_force(space, p, Z, coupling);
    };
    sys.force_tangent = [&space, &p, coupling](const Vec& Z) {
        return tangent(space, p, Z, coupling);
    };
    sys.stored = [&space, &p, coupling](const Vec& Z) {
        return stored_energy(space, p, Z, coupling);
    };
    return sys;
}

namespace {

double system_energy(const SecondOrderSystem& sys, const Vec& Z, const Vec& V) {
    return 0.5 * V.dot(sys.M * V) + sys.stored(Z);
}

} // namespace

StepOutcome midpoint_step(const SecondOrderSystem& sys, Vec& Z, Vec& V, double dt,
                          const StepConfig& cfg, double t_now) {
    const double e_before = system_energy(sys, Z, V);

    // Residual in the end-of-step velocity W:
    //   R(W) = M (W - V)/dt + C (V + W)/2 + F(Z + dt (V + W)/4) - load.
    Vec W = V;
    auto residual = [&](const Vec& w) {
        const Vec v_mid = 0.5 * (V + w);
        const Vec z_mid = Z + 0.25 * dt * (V + w);
        return Vec(sys.M * ((w - V) / dt) + sys.C * v_mid + sys.force(z_mid) - sys.load);
    };

    Vec R = residual(W);
    const double scale = std::max(1.0, R.norm());
    double res_norm = R.norm();
    double prev_norm = res_norm;
    int iters = 0;

    Eigen::SparseLU<SpMat> solver;
    while (res_norm > cfg.newton_tol * scale && res_norm > cfg.newton_tol) {
        if (iters >= cfg.newton_max_iter) {
            std::ostringstream msg;
            msg << "Newton did not reach tolerance within " << cfg.newton_max_iter
                << " iterations (residual " << res_norm << ") at t=" << t_now;
            throw Error(ErrorCode::NewtonDiverged, msg.str());
        }
        const Vec z_mid = Z + 0.25 * dt * (V + W);
        SpMat J = sys.M / dt + 0.5 * sys.C + (0.25 * dt) * sys.force_tangent(z_mid);
        J.makeCompressed();
        solver.compute(J);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::LinearSolveSingular,
                        "midpoint tangent factorization failed");
        const Vec dW = solver.solve(-R);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::LinearSolveSingular, "midpoint tangent solve failed");
        W += dW;
        R = residual(W);
        prev_norm = res_norm;
        res_norm = R.norm();
        ++iters;
    }

    const Vec v_mid = 0.5 * (V + W);
    const Vec z_next = Z + dt * v_mid;

    StepOutcome out;
    out.newton_iters = iters;
    out.last_residual_ratio = prev_norm > 0.0 ? res_norm / prev_norm : 0.0;

    const double e_after = system_energy(sys, z_next, W);
    BalanceRecord& rec = out.record;
    rec.t = t_now + dt;
    rec.energy_total = e_after;
    rec.dissipation_kappa_rate = v_mid.dot(sys.C_kappa * v_mid);
    rec.dissipation_gamma_rate = v_mid.dot(sys.C_gamma * v_mid);
    rec.work_rate = v_mid.dot(sys.load);
    rec.balance_residual = e_after - e_before +
                           dt * (rec.dissipation_kappa_rate + rec.dissipation_gamma_rate) -
                           dt * rec.work_rate;
    rec.velocity_norm_W = std::sqrt(W.dot(sys.M * W));

    Z = z_next;
    V = W;
    return out;
}

std::pair<State, BalanceRecord> step(const DiscreteSpace& space,
                                     const AssembledOperators& ops,
                                     const BeamParameters& p, const State& state,
                                     const StepConfig& cfg, double t_now) {
    SecondOrderSystem sys = full_system(space, ops, p);
    State next = state;
    StepOutcome out = midpoint_step(sys, next.z, next.v, cfg.dt, cfg, t_now);
    return {next, out.record};
}

TrajectorySummary simulate(const DiscreteSpace& space, const AssembledOperators& ops,
                           const BeamParameters& p, const State& state0,
                           const StepConfig& cfg, const SimulationSinks& sinks) {
    SecondOrderSystem sys = full_system(space, ops, p);

    TrajectorySummary summary;
    summary.final_state = state0;
    summary.energy_initial = system_energy(sys, state0.z, state0.v);
    summary.energy_final = summary.energy_initial;

    State cur = state0;
    double t = 0.0;
    double dt = cfg.dt;
    const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);

    if (sinks.on_snapshot) sinks.on_snapshot(0, 0.0, cur);

    while (t < cfg.t_end - t_eps) {
        const double dt_eff = std::min(dt, cfg.t_end - t);
        StepOutcome out;
        State trial = cur;
        try {
            out = midpoint_step(sys, trial.z, trial.v, dt_eff, cfg, t);
        } catch (const Error& first) {
            if (first.code() != ErrorCode::NewtonDiverged) throw;
            // Halve once and retry; a second failure aborts the run.
            dt *= 0.5;
            ++summary.dt_halvings;
            trial = cur;
            try {
                out = midpoint_step(sys, trial.z, trial.v, std::min(dt, cfg.t_end - t),
                                    cfg, t);
            } catch (const Error& second) {
                std::ostringstream msg;
                msg << "step failed twice at t=" << t << " (dt=" << dt
                    << "): " << second.what();
                throw Error(second.code(), msg.str());
            }
        }
        cur = trial;
        const double dt_used = out.record.t - t;
        t = out.record.t;
        ++summary.steps;

        summary.sum_abs_balance_residual += std::abs(out.record.balance_residual);
        summary.cumulative_dissipation +=
            dt_used *
            (out.record.dissipation_kappa_rate + out.record.dissipation_gamma_rate);
        summary.cumulative_work += dt_used * out.record.work_rate;

        if (sinks.on_record) {
            const EnergyBreakdown eb = energy(space, p, cur, ops.load);
            sinks.on_record(out.record, eb, decay_phi(space, p, cur));
        }
        if (sinks.on_snapshot && cfg.snapshot_every > 0 &&
            summary.steps % cfg.snapshot_every == 0)
            sinks.on_snapshot(summary.steps, t, cur);
    }

    summary.final_state = cur;
    summary.t_final = t;
    summary.energy_final = system_energy(sys, cur.z, cur.v);
    summary.cumulative_balance_defect = summary.energy_final +
                                        summary.cumulative_dissipation -
                                        summary.cumulative_work - summary.energy_initial;
    return summary;
}

} // namespace transbeam
