#include "transbeam/assembly.hpp"

#include <vector>

namespace transbeam {

namespace {

using Triplet = Eigen::Triplet<double>;

struct SegmentCoeffs {
    double beta, rho, mu, lambda;
};

SegmentCoeffs segment_coeffs(const BeamParameters& p, int segment) {
    if (segment == 0) return {p.beta1, p.rho1, p.mu1, p.lambda1};
    return {p.beta2, p.rho2, p.mu2, p.lambda2};
}

void scatter(std::vector<Triplet>& out, const std::array<int, 4>& dofs,
             const Eigen::Matrix4d& ke) {
    for (int i = 0; i < 4; ++i) {
        if (dofs[i] < 0) continue;
        for (int j = 0; j < 4; ++j)
            if (dofs[j] >= 0) out.emplace_back(dofs[i], dofs[j], ke(i, j));
    }
}

void scatter(std::vector<Triplet>& out, const std::array<int, 3>& dofs,
             const Eigen::Matrix3d& ke) {
    for (int i = 0; i < 3; ++i) {
        if (dofs[i] < 0) continue;
        for (int j = 0; j < 3; ++j)
            if (dofs[j] >= 0) out.emplace_back(dofs[i], dofs[j], ke(i, j));
    }
}

SpMat from_triplets(int n, std::vector<Triplet>& trips) {
    SpMat m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

// Local displacement coefficients of one element, constrained DOFs as zero.
template <size_t N>
void gather_local(const Vec& Z, const std::array<int, N>& dofs, double* out) {
    for (size_t i = 0; i < N; ++i)
        out[i] = dofs[i] >= 0 ? Z[dofs[i]] : 0.0;
}

} // namespace

AssembledOperators assemble(const DiscreteSpace& space, const BeamParameters& p,
                            const Forcing& f, MembraneCoupling coupling) {
    const int n = space.dofs.n_total();
    AssembledOperators ops;
    ops.coupling = coupling;
    ops.load = Vec::Zero(n);

    std::vector<Triplet> tm, tck, tcg, tk;

    for (const ElementView& ev : elements(space)) {
        const SegmentCoeffs c = segment_coeffs(p, ev.segment);
        const Polynomial& g_trans = ev.segment == 0 ? f.g1 : f.g3;
        const Polynomial& g_long = ev.segment == 0 ? f.g2 : f.g4;

        Eigen::Matrix4d me = Eigen::Matrix4d::Zero();
        Eigen::Matrix4d ke_bend = Eigen::Matrix4d::Zero();
        Eigen::Matrix4d ce_kappa = Eigen::Matrix4d::Zero();
        Eigen::Matrix3d ml = Eigen::Matrix3d::Zero();
        Eigen::Matrix3d kl = Eigen::Matrix3d::Zero();
        Eigen::Matrix3d cl_gamma = Eigen::Matrix3d::Zero();
        Eigen::Vector4d fe_t = Eigen::Vector4d::Zero();
        Eigen::Vector3d fe_l = Eigen::Vector3d::Zero();

        for (size_t q = 0; q < space.quad.points.size(); ++q) {
            const double xi = space.quad.points[q];
            const double w = space.quad.weights[q] * ev.h;
            const double x = ev.xa + xi * ev.h;

            double N[4], dN[4], d2N[4], d3N[4];
            hermite_shapes(xi, ev.h, N, dN, d2N, d3N);
            double P[3], dP[3];
            quadratic_shapes(xi, ev.h, P, dP);

            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    me(i, j) += w * (c.beta * N[i] * N[j] + c.mu * dN[i] * dN[j]);
                    ke_bend(i, j) += w * c.lambda * d2N[i] * d2N[j];
                    if (ev.segment == 0)
                        ce_kappa(i, j) += w * p.kappa * dN[i] * dN[j];
                }
                fe_t(i) += w * g_trans(x) * N[i];
            }
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    ml(i, j) += w * c.rho * P[i] * P[j];
                    kl(i, j) += w * dP[i] * dP[j];
                    if (ev.segment == 0)
                        cl_gamma(i, j) += w * p.gamma * P[i] * P[j];
                }
                fe_l(i) += w * g_long(x) * P[i];
            }
        }

        scatter(tm, ev.tdofs, me);
        scatter(tk, ev.tdofs, ke_bend);
        scatter(tm, ev.ldofs, ml);
        scatter(tk, ev.ldofs, kl);
        if (ev.segment == 0) {
            scatter(tck, ev.tdofs, ce_kappa);
            scatter(tcg, ev.ldofs, cl_gamma);
        }
        for (int i = 0; i < 4; ++i)
            if (ev.tdofs[i] >= 0) ops.load[ev.tdofs[i]] += fe_t(i);
        for (int i = 0; i < 3; ++i)
            if (ev.ldofs[i] >= 0) ops.load[ev.ldofs[i]] += fe_l(i);
    }

    ops.M = from_triplets(n, tm);
    ops.C_kappa = from_triplets(n, tck);
    ops.C_gamma = from_triplets(n, tcg);
    ops.C = ops.C_kappa + ops.C_gamma;
    ops.K_lin = from_triplets(n, tk);
    return ops;
}

Vec internal_force(const DiscreteSpace& space, const BeamParameters& p, const Vec& Z,
                   MembraneCoupling coupling) {
    const bool full = coupling == MembraneCoupling::Full;
    Vec F = Vec::Zero(space.dofs.n_total());

    for (const ElementView& ev : elements(space)) {
        const SegmentCoeffs c = segment_coeffs(p, ev.segment);
        double zt[4], zl[3];
        gather_local(Z, ev.tdofs, zt);
        gather_local(Z, ev.ldofs, zl);

        for (size_t q = 0; q < space.quad.points.size(); ++q) {
            const double xi = space.quad.points[q];
            const double w = space.quad.weights[q] * ev.h;

            double N[4], dN[4], d2N[4], d3N[4];
            hermite_shapes(xi, ev.h, N, dN, d2N, d3N);
            double P[3], dP[3];
            quadratic_shapes(xi, ev.h, P, dP);

            double wx = 0.0, wxx = 0.0, lx = 0.0;
            for (int i = 0; i < 4; ++i) {
                wx += zt[i] * dN[i];
                wxx += zt[i] * d2N[i];
            }
            for (int i = 0; i < 3; ++i)
                lx += zl[i] * dP[i];

            const double strain = lx + (full ? 0.5 * wx * wx : 0.0);

            for (int i = 0; i < 4; ++i) {
                if (ev.tdofs[i] < 0) continue;
                double fi = c.lambda * wxx * d2N[i];
                if (full) fi += strain * wx * dN[i];
                F[ev.tdofs[i]] += w * fi;
            }
            for (int i = 0; i < 3; ++i) {
                if (ev.ldofs[i] < 0) continue;
                F[ev.ldofs[i]] += w * strain * dP[i];
            }
        }
    }
    return F;
}

SpMat tangent(const DiscreteSpace& space, const BeamParameters& p, const Vec& Z,
              MembraneCoupling coupling) {
    const bool full = coupling == MembraneCoupling::Full;
    const int n = space.dofs.n_total();
    std::vector<Triplet> trips;

    for (const ElementView& ev : elements(space)) {
        const SegmentCoeffs c = segment_coeffs(p, ev.segment);
        double zt[4], zl[3];
        gather_local(Z, ev.tdofs, zt);
        gather_local(Z, ev.ldofs, zl);

        Eigen::Matrix4d ktt = Eigen::Matrix4d::Zero();
        Eigen::Matrix<double, 4, 3> ktl = Eigen::Matrix<double, 4, 3>::Zero();
        Eigen::Matrix3d kll = Eigen::Matrix3d::Zero();

        for (size_t q = 0; q < space.quad.points.size(); ++q) {
            const double xi = space.quad.points[q];
            const double w = space.quad.weights[q] * ev.h;

            double N[4], dN[4], d2N[4], d3N[4];
            hermite_shapes(xi, ev.h, N, dN, d2N, d3N);
            double P[3], dP[3];
            quadratic_shapes(xi, ev.h, P, dP);

            double wx = 0.0, lx = 0.0;
            for (int i = 0; i < 4; ++i)
                wx += zt[i] * dN[i];
            for (int i = 0; i < 3; ++i)
                lx += zl[i] * dP[i];
            const double strain = lx + (full ? 0.5 * wx * wx : 0.0);

            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    double kij = c.lambda * d2N[i] * d2N[j];
                    if (full) kij += (strain + wx * wx) * dN[i] * dN[j];
                    ktt(i, j) += w * kij;
                }
                if (full)
                    for (int j = 0; j < 3; ++j)
                        ktl(i, j) += w * wx * dN[i] * dP[j];
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    kll(i, j) += w * dP[i] * dP[j];
        }

        scatter(trips, ev.tdofs, ktt);
        scatter(trips, ev.ldofs, kll);
        for (int i = 0; i < 4; ++i) {
            if (ev.tdofs[i] < 0) continue;
            for (int j = 0; j < 3; ++j) {
                if (ev.ldofs[j] < 0) continue;
                trips.emplace_back(ev.tdofs[i], ev.ldofs[j], ktl(i, j));
                trips.emplace_back(ev.ldofs[j], ev.tdofs[i], ktl(i, j));
            }
        }
    }

    SpMat K(n, n);
    K.setFromTriplets(trips.begin(), trips.end());
    K.makeCompressed();
    return K;
}

double stored_energy(const DiscreteSpace& space, const BeamParameters& p, const Vec& Z,
                     MembraneCoupling coupling) {
    const bool full = coupling == MembraneCoupling::Full;
    double energy = 0.0;

    for (const ElementView& ev : elements(space)) {
        const SegmentCoeffs c = segment_coeffs(p, ev.segment);
        double zt[4], zl[3];
        gather_local(Z, ev.tdofs, zt);
        gather_local(Z, ev.ldofs, zl);

        for (size_t q = 0; q < space.quad.points.size(); ++q) {
            const double xi = space.quad.points[q];
            const double w = space.quad.weights[q] * ev.h;

            double N[4], dN[4], d2N[4], d3N[4];
            hermite_shapes(xi, ev.h, N, dN, d2N, d3N);
            double P[3], dP[3];
            quadratic_shapes(xi, ev.h, P, dP);

            double wx = 0.0, wxx = 0.0, lx = 0.0;
            for (int i = 0; i < 4; ++i) {
                wx += zt[i] * dN[i];
                wxx += zt[i] * d2N[i];
            }
            for (int i = 0; i < 3; ++i)
                lx += zl[i] * dP[i];

            const double strain = lx + (full ? 0.5 * wx * wx : 0.0);
            energy += w * 0.5 * (c.lambda * wxx * wxx + strain * strain);
        }
    }
    return energy;
}

} // namespace transbeam
