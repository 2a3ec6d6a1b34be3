#include "transbeam/functionals.hpp"

#include <cmath>

#include "transbeam/errors.hpp"

namespace transbeam {

namespace {

struct PointValues {
    double t = 0.0, tx = 0.0, txx = 0.0; ///< transverse value and derivatives
    double l = 0.0, lx = 0.0;            ///< longitudinal value and derivative
};

PointValues at_point(const Vec& coeffs, const ElementView& ev, const double* N,
                     const double* dN, const double* d2N, const double* P,
                     const double* dP) {
    PointValues pv;
    for (int i = 0; i < 4; ++i) {
        const double zi = ev.tdofs[i] >= 0 ? coeffs[ev.tdofs[i]] : 0.0;
        pv.t += zi * N[i];
        pv.tx += zi * dN[i];
        pv.txx += zi * d2N[i];
    }
    for (int i = 0; i < 3; ++i) {
        const double zi = ev.ldofs[i] >= 0 ? coeffs[ev.ldofs[i]] : 0.0;
        pv.l += zi * P[i];
        pv.lx += zi * dP[i];
    }
    return pv;
}

template <typename Body>
void for_each_quad_point(const DiscreteSpace& space, Body&& body) {
    for (const ElementView& ev : elements(space)) {
        for (size_t q = 0; q < space.quad.points.size(); ++q) {
            const double xi = space.quad.points[q];
            const double w = space.quad.weights[q] * ev.h;
            double N[4], dN[4], d2N[4], d3N[4];
            hermite_shapes(xi, ev.h, N, dN, d2N, d3N);
            double P[3], dP[3];
            quadratic_shapes(xi, ev.h, P, dP);
            body(ev, w, N, dN, d2N, P, dP);
        }
    }
}

} // namespace

std::pair<double, double> q_functionals(const DiscreteSpace& space, const Vec& Z) {
    double q1 = 0.0, q2 = 0.0;
    for_each_quad_point(space, [&](const ElementView& ev, double w, const double* N,
                                   const double* dN, const double* d2N, const double* P,
                                   const double* dP) {
        const PointValues pv = at_point(Z, ev, N, dN, d2N, P, dP);
        const double strain = pv.lx + 0.5 * pv.tx * pv.tx;
        (ev.segment == 0 ? q1 : q2) += w * strain * strain;
    });
    return {q1, q2};
}

EnergyBreakdown energy(const DiscreteSpace& space, const BeamParameters& p,
                       const State& state) {
    return energy(space, p, state, Vec::Zero(space.dofs.n_total()));
}

EnergyBreakdown energy(const DiscreteSpace& space, const BeamParameters& p,
                       const State& state, const Vec& load) {
    EnergyBreakdown e;
    for_each_quad_point(space, [&](const ElementView& ev, double w, const double* N,
                                   const double* dN, const double* d2N, const double* P,
                                   const double* dP) {
        const PointValues disp = at_point(state.z, ev, N, dN, d2N, P, dP);
        const PointValues vel = at_point(state.v, ev, N, dN, d2N, P, dP);
        const double beta = ev.segment == 0 ? p.beta1 : p.beta2;
        const double mu = ev.segment == 0 ? p.mu1 : p.mu2;
        const double rho = ev.segment == 0 ? p.rho1 : p.rho2;
        const double lambda = ev.segment == 0 ? p.lambda1 : p.lambda2;

        e.kinetic_transverse += w * beta * vel.t * vel.t;
        e.kinetic_rotational += w * mu * vel.tx * vel.tx;
        e.kinetic_longitudinal += w * rho * vel.l * vel.l;
        e.bending += w * lambda * disp.txx * disp.txx;
        const double strain = disp.lx + 0.5 * disp.tx * disp.tx;
        (ev.segment == 0 ? e.q1 : e.q2) += w * strain * strain;
    });
    e.total = 0.5 * (e.kinetic_transverse + e.kinetic_rotational +
                     e.kinetic_longitudinal + e.bending + e.q1 + e.q2);
    e.lyapunov = e.total - load.dot(state.z);
    return e;
}

double decay_phi(const DiscreteSpace& space, const BeamParameters& p,
                 const State& state) {
    double acc = 0.0;
    for_each_quad_point(space, [&](const ElementView& ev, double w, const double* N,
                                   const double* dN, const double* d2N, const double* P,
                                   const double* dP) {
        const PointValues disp = at_point(state.z, ev, N, dN, d2N, P, dP);
        const PointValues vel = at_point(state.v, ev, N, dN, d2N, P, dP);
        const double beta = ev.segment == 0 ? p.beta1 : p.beta2;
        const double mu = ev.segment == 0 ? p.mu1 : p.mu2;
        const double rho = ev.segment == 0 ? p.rho1 : p.rho2;
        const double lambda = ev.segment == 0 ? p.lambda1 : p.lambda2;

        acc += w * (beta * vel.t * vel.t + mu * vel.tx * vel.tx + rho * vel.l * vel.l +
                    lambda * disp.txx * disp.txx + disp.lx * disp.lx);
    });
    return 0.5 * acc;
}

double cross_term_H(const DiscreteSpace& space, const State& a, const State& b,
                    const State& diff) {
    double acc = 0.0;
    for_each_quad_point(space, [&](const ElementView& ev, double w, const double* N,
                                   const double* dN, const double* d2N, const double* P,
                                   const double* dP) {
        const PointValues pa = at_point(a.z, ev, N, dN, d2N, P, dP);
        const PointValues pb = at_point(b.z, ev, N, dN, d2N, P, dP);
        const PointValues pd = at_point(diff.z, ev, N, dN, d2N, P, dP);
        const PointValues pv = at_point(diff.v, ev, N, dN, d2N, P, dP);

        // 1/2 ((la_x + lb_x) d_x + d_lx (ta_x + tb_x)) dv_x
        //   + (ta_x + tb_x) d_x dv_lx
        //   + 1/2 (ta_x^2 + ta_x tb_x + tb_x^2) d_x dv_x, per segment.
        const double sum_tx = pa.tx + pb.tx;
        const double sum_lx = pa.lx + pb.lx;
        const double cubic = pa.tx * pa.tx + pa.tx * pb.tx + pb.tx * pb.tx;

        acc += w * (0.5 * (sum_lx * pd.tx + pd.lx * sum_tx) * pv.tx +
                    sum_tx * pd.tx * pv.lx + 0.5 * cubic * pd.tx * pv.tx);
    });
    return acc;
}

double state_norm_H_sq(const DiscreteSpace& space, const BeamParameters& p,
                       const State& state) {
    double acc = 0.0;
    for_each_quad_point(space, [&](const ElementView& ev, double w, const double* N,
                                   const double* dN, const double* d2N, const double* P,
                                   const double* dP) {
        const PointValues disp = at_point(state.z, ev, N, dN, d2N, P, dP);
        const PointValues vel = at_point(state.v, ev, N, dN, d2N, P, dP);
        const double beta = ev.segment == 0 ? p.beta1 : p.beta2;
        const double mu = ev.segment == 0 ? p.mu1 : p.mu2;
        const double rho = ev.segment == 0 ? p.rho1 : p.rho2;
        const double lambda = ev.segment == 0 ? p.lambda1 : p.lambda2;

        acc += w * (disp.lx * disp.lx + lambda * disp.txx * disp.txx);
        acc += w * (beta * vel.t * vel.t + mu * vel.tx * vel.tx + rho * vel.l * vel.l);
    });
    return acc;
}

double state_norm_H(const DiscreteSpace& space, const BeamParameters& p,
                    const State& state) {
    return std::sqrt(state_norm_H_sq(space, p, state));
}

double lemma1_ratio(const DiscreteSpace& space, const State& state) {
    double h1_sq = 0.0;   // H1 norm of the glued pair
    double h2_t_sq = 0.0; // H2 norm of the glued transverse field
    for_each_quad_point(space, [&](const ElementView& ev, double w, const double* N,
                                   const double* dN, const double* d2N, const double* P,
                                   const double* dP) {
        const PointValues pv = at_point(state.z, ev, N, dN, d2N, P, dP);
        h1_sq += w * (pv.t * pv.t + pv.tx * pv.tx + pv.l * pv.l + pv.lx * pv.lx);
        h2_t_sq += w * (pv.t * pv.t + pv.tx * pv.tx + pv.txx * pv.txx);
    });
    auto [q1, q2] = q_functionals(space, state.z);
    const double denom = q1 + q2 + h2_t_sq * h2_t_sq;
    if (denom <= 0.0)
        throw Error(ErrorCode::ZeroDenominator,
                    "both the membrane functional and the transverse field vanish");
    return h1_sq / denom;
}

double interface_moment_defect(const DiscreteSpace& space, const BeamParameters& p,
                               const Vec& Z) {
    const double L0 = space.mesh.L0();
    const double left = evaluate_vector(space, Z, Field::Phi, 2, L0);
    const double right = evaluate_vector(space, Z, Field::U, 2, L0);
    return std::abs(p.lambda1 * left - p.lambda2 * right);
}

double interface_flux_defect(const DiscreteSpace& space, const BeamParameters& p,
                             const Vec& Z) {
    const double L0 = space.mesh.L0();
    const double left = evaluate_third_derivative(space, Z, Field::Phi, L0);
    const double right = evaluate_third_derivative(space, Z, Field::U, L0);
    return std::abs(p.lambda1 * left - p.lambda2 * right);
}

} // namespace transbeam
