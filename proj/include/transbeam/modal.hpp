#pragma once

#include <string>

#include "transbeam/timestepper.hpp"

namespace transbeam {

struct Eigenpair {
    double value = 0.0;
    Vec vector; ///< over the full free-DOF space, zero outside its block
};

/// Eigenpairs of the bending pair (stiffness vs. beta/mu metric) on the
/// transverse block and of the membrane pair (stiffness vs. rho-mass) on
/// the longitudinal block. Eigenvectors are orthonormal in the declared
/// metric and sorted by ascending eigenvalue.
struct ModalBasis {
    std::vector<Eigenpair> transverse;
    std::vector<Eigenpair> longitudinal;
    std::string transverse_metric = "G(beta-mass + mu-gradient)";
    std::string longitudinal_metric = "rho-mass";
};

std::vector<Eigenpair> transverse_modes(const DiscreteSpace& space,
                                        const BeamParameters& p, int count);
std::vector<Eigenpair> longitudinal_modes(const DiscreteSpace& space,
                                          const BeamParameters& p, int count);

ModalBasis modal_basis(const DiscreteSpace& space, const BeamParameters& p,
                       int count_transverse, int count_longitudinal);

struct ModalTrajectorySummary {
    State final_state; ///< reconstructed in the full free-DOF space
    Vec final_q, final_qdot;
    std::vector<double> final_modal_energies; ///< quadratic part per mode
    double t_final = 0.0;
    double energy_initial = 0.0;
    double energy_final = 0.0;
    double sum_abs_balance_residual = 0.0;
    long steps = 0;
};

/// Projects the initial state onto the basis in the declared metrics and
/// integrates the Galerkin-reduced system with the same midpoint scheme.
ModalTrajectorySummary modal_simulate(const DiscreteSpace& space,
                                      const AssembledOperators& ops,
                                      const BeamParameters& p, const ModalBasis& basis,
                                      const State& state0, const StepConfig& cfg);

} // namespace transbeam
