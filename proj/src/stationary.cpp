#include "transbeam/stationary.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>

#include "transbeam/errors.hpp"

namespace transbeam {

namespace {

struct NewtonResult {
    Vec Z;
    double residual_norm = 0.0;
    int iters = 0;
    bool converged = false;
};

// One-norm condition estimate of the factorized tangent (single Hager
// sweep); reported with SINGULAR_TANGENT diagnostics.
double condition_estimate(const Eigen::SparseLU<SpMat>& lu, const SpMat& K) {
    const int n = static_cast<int>(K.rows());
    Vec e = Vec::Constant(n, 1.0 / n);
    Vec y = lu.solve(e);
    double norm_inv = y.lpNorm<1>();
    Vec sign = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    Vec z = lu.solve(sign);
    norm_inv = std::max(norm_inv, z.lpNorm<Eigen::Infinity>());
    double norm_k = 0.0;
    for (int j = 0; j < K.outerSize(); ++j) {
        double col = 0.0;
        for (SpMat::InnerIterator it(K, j); it; ++it) col += std::abs(it.value());
        norm_k = std::max(norm_k, col);
    }
    return norm_k * norm_inv;
}

NewtonResult newton_armijo(const DiscreteSpace& space, const AssembledOperators& ops,
                           const BeamParameters& p, Vec Z, const Vec& load, double tol,
                           int max_iter) {
    NewtonResult result;
    Vec R = internal_force(space, p, Z, ops.coupling) - load;
    double merit = 0.5 * R.squaredNorm();
    const double scale = std::max(1.0, load.norm());

    int iters = 0;
    Eigen::SparseLU<SpMat> solver;
    while (R.norm() > tol * scale) {
        if (iters >= max_iter) break;
        SpMat K = tangent(space, p, Z, ops.coupling);
        K.makeCompressed();
        solver.compute(K);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::SingularTangent,
                        "tangent factorization failed (structurally singular)");
        const Vec d = solver.solve(-R);
        if (solver.info() != Eigen::Success || !d.allFinite()) {
            std::ostringstream msg;
            msg << "tangent solve failed, condition estimate "
                << condition_estimate(solver, K);
            throw Error(ErrorCode::SingularTangent, msg.str());
        }

        // Armijo on 1/2 ||R||^2; the Newton direction gives slope -2*merit.
        double alpha = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            const Vec Z_trial = Z + alpha * d;
            const Vec R_trial = internal_force(space, p, Z_trial, ops.coupling) - load;
            const double merit_trial = 0.5 * R_trial.squaredNorm();
            if (merit_trial <= merit * (1.0 - 2e-4 * alpha)) {
                Z = Z_trial;
                R = R_trial;
                merit = merit_trial;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        ++iters;
        if (!accepted) break;
    }

    result.Z = Z;
    result.residual_norm = R.norm();
    result.iters = iters;
    result.converged = R.norm() <= tol * scale;
    return result;
}

} // namespace

StationaryPoint solve_stationary(const DiscreteSpace& space,
                                 const AssembledOperators& ops, const BeamParameters& p,
                                 const Vec& Z_guess, double tol, int max_iter) {
    NewtonResult direct =
        newton_armijo(space, ops, p, Z_guess, ops.load, tol, max_iter);
    if (!direct.converged && Z_guess.isZero(0.0)) {
        // Load continuation from the unforced equilibrium.
        Vec Z = Vec::Zero(space.dofs.n_total());
        int total_iters = direct.iters;
        NewtonResult stage;
        for (int k = 1; k <= 10; ++k) {
            const Vec partial = (static_cast<double>(k) / 10.0) * ops.load;
            stage = newton_armijo(space, ops, p, Z, partial, tol, max_iter);
            total_iters += stage.iters;
            if (!stage.converged) break;
            Z = stage.Z;
        }
        if (stage.converged) {
            return {stage.Z, stage.residual_norm, total_iters};
        }
        std::ostringstream msg;
        msg << "stationary Newton diverged (residual " << stage.residual_norm
            << " after load continuation)";
        throw Error(ErrorCode::NewtonDiverged, msg.str());
    }
    if (!direct.converged) {
        std::ostringstream msg;
        msg << "stationary Newton diverged (residual " << direct.residual_norm << " after "
            << direct.iters << " iterations)";
        throw Error(ErrorCode::NewtonDiverged, msg.str());
    }
    return {direct.Z, direct.residual_norm, direct.iters};
}

double distance_to_stationary(const DiscreteSpace& space, const BeamParameters& p,
                              const State& state, const StationaryPoint& point) {
    State diff;
    diff.z = state.z - point.Z;
    diff.v = state.v;
    return state_norm_H(space, p, diff);
}

GradientReport gradient_diagnostic(const DiscreteSpace& space,
                                   const AssembledOperators& ops,
                                   const BeamParameters& p, const Forcing& f,
                                   const TrajectorySummary& run, double tol,
                                   int max_iter) {
    if (!f.g2.is_zero() || !f.g4.is_zero())
        throw Error(ErrorCode::AttractorModeViolation,
                    "stabilization diagnostics require g2 = g4 = 0");

    GradientReport report;
    report.stationary =
        solve_stationary(space, ops, p, run.final_state.z, tol, max_iter);
    report.final_velocity_norm_W =
        std::sqrt(run.final_state.v.dot(ops.M * run.final_state.v));
    report.final_lyapunov = energy(space, p, run.final_state, ops.load).lyapunov;
    report.h_distance = distance_to_stationary(space, p, run.final_state, report.stationary);
    return report;
}

} // namespace transbeam
