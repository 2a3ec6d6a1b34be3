#pragma once

#include <Eigen/Sparse>

#include "transbeam/fem.hpp"

namespace transbeam {

using SpMat = Eigen::SparseMatrix<double>;

/// Full keeps the quadratic membrane strain; Linearized drops the
/// transverse contribution, which reduces the internal force to K_lin.
enum class MembraneCoupling { Full, Linearized };

/// Discrete operators of the variational identity over free DOFs.
///
/// M realizes the velocity inner product (beta/mu-weighted transverse
/// blocks, rho-weighted longitudinal blocks). C = C_kappa + C_gamma is
/// the damping, supported on the damped segment only. K_lin carries the
/// bending blocks and the linear membrane part.
struct AssembledOperators {
    SpMat M, C, C_kappa, C_gamma, K_lin;
    Vec load;
    MembraneCoupling coupling = MembraneCoupling::Full;
};

AssembledOperators assemble(const DiscreteSpace& space, const BeamParameters& p,
                            const Forcing& f,
                            MembraneCoupling coupling = MembraneCoupling::Full);

/// Weak-form internal force (gradient of the stored energy).
Vec internal_force(const DiscreteSpace& space, const BeamParameters& p, const Vec& Z,
                   MembraneCoupling coupling = MembraneCoupling::Full);

/// Exact derivative of internal_force; symmetric, equals K_lin at Z = 0.
SpMat tangent(const DiscreteSpace& space, const BeamParameters& p, const Vec& Z,
              MembraneCoupling coupling = MembraneCoupling::Full);

/// Stored elastic energy: bending plus half the squared membrane strain.
double stored_energy(const DiscreteSpace& space, const BeamParameters& p, const Vec& Z,
                     MembraneCoupling coupling = MembraneCoupling::Full);

} // namespace transbeam
