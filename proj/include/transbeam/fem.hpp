#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "transbeam/model.hpp"

namespace transbeam {

using Vec = Eigen::VectorXd;

enum class Field { Phi, U, Omega, V };

inline bool is_transverse(Field f) { return f == Field::Phi || f == Field::U; }

struct Mesh1D {
    std::vector<double> nodes_left;  ///< 0 = x_0 < ... < x_n = L0
    std::vector<double> nodes_right; ///< L0 = y_0 < ... < y_m = L
    int interface_index = 0;         ///< index of the shared node within nodes_left

    double L0() const { return nodes_left.back(); }
    double L() const { return nodes_right.back(); }
    int n_left() const { return static_cast<int>(nodes_left.size()) - 1; }
    int n_right() const { return static_cast<int>(nodes_right.size()) - 1; }
};

/// Gauss-Legendre rule on the unit reference element.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    int exact_degree = 0;
};

QuadratureRule gauss_rule(int npoints);

/// Element-local to global indices over free DOFs; -1 marks a DOF
/// eliminated by an essential or transmission condition with value 0.
///
/// Transverse fields use two-node Hermite cubic elements (value + slope
/// per node); longitudinal fields use three-node quadratic elements.
/// At the interface the value/slope DOFs of phi and u coincide, as do
/// the value DOFs of omega and v.
struct DofMap {
    std::vector<std::array<int, 4>> trans_left, trans_right;
    std::vector<std::array<int, 3>> long_left, long_right;
    int n_transverse = 0;   ///< free transverse DOFs, indices [0, n_transverse)
    int n_longitudinal = 0; ///< free longitudinal DOFs, indices [n_transverse, n_total)

    int n_total() const { return n_transverse + n_longitudinal; }
};

struct DiscreteSpace {
    Mesh1D mesh;
    DofMap dofs;
    QuadratureRule quad;
    std::uint64_t layout_hash = 0; ///< fingerprint guarding snapshot reload
};

/// Builds the conforming spaces with the transmission coupling at L0 and
/// the end conditions eliminated. Requires at least 2 elements per segment.
DiscreteSpace build_space(const BeamParameters& p, int n_left, int n_right);

/// Coefficient vectors over free DOFs at one time instant.
struct State {
    Vec z; ///< displacements
    Vec v; ///< velocities
};

State zero_state(const DiscreteSpace& space);

/// Scalar field with its spatial derivative, as needed for Hermite
/// interpolation of the transverse components.
struct SmoothFn {
    std::function<double(double)> f;
    std::function<double(double)> df;
};

SmoothFn zero_fn();
SmoothFn poly_fn(std::vector<double> coeffs);

struct InitialData {
    SmoothFn phi0, phi1; ///< transverse displacement / velocity on (0, L0)
    SmoothFn u0, u1;     ///< transverse displacement / velocity on (L0, L)
    std::function<double(double)> omega0, omega1; ///< longitudinal, (0, L0)
    std::function<double(double)> v0, v1;         ///< longitudinal, (L0, L)

    InitialData();
};

/// Nodal interpolation of initial data. Rejects data incompatible with the
/// end conditions or the interface continuity (tolerance 1e-12).
State interpolate_initial(const DiscreteSpace& space, const InitialData& data);

/// Exact evaluation of a displacement coefficient vector. Derivative order
/// up to 2 for transverse fields, 1 for longitudinal. At a node the
/// left-element limit is returned; at L0 the side is selected by the field.
double evaluate_vector(const DiscreteSpace& space, const Vec& coeffs, Field field,
                       int deriv, double x);

double evaluate(const DiscreteSpace& space, const State& state, Field field,
                int deriv, double x);

/// Third derivative of a transverse field from the element-interior cubic;
/// diagnostic used by the transmission recovery checks.
double evaluate_third_derivative(const DiscreteSpace& space, const Vec& coeffs,
                                 Field field, double x);

// --- element iteration and reference shape functions (used by assembly
// --- and the functionals; derivatives are with respect to x) -----------

struct ElementView {
    double xa = 0.0; ///< left endpoint
    double h = 0.0;  ///< length
    int segment = 0; ///< 0 damped (0,L0), 1 undamped (L0,L)
    std::array<int, 4> tdofs{}; ///< Hermite DOFs: value_a, slope_a, value_b, slope_b
    std::array<int, 3> ldofs{}; ///< quadratic DOFs: node_a, midnode, node_b
};

std::vector<ElementView> elements(const DiscreteSpace& space);

void hermite_shapes(double xi, double h, double N[4], double dN[4], double d2N[4],
                    double d3N[4]);
void quadratic_shapes(double xi, double h, double P[3], double dP[3]);

} // namespace transbeam
