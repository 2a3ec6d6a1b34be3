#include "transbeam/fem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "transbeam/errors.hpp"

namespace transbeam {

QuadratureRule gauss_rule(int npoints) {
    QuadratureRule rule;
    // Abscissas/weights on [-1,1], mapped to [0,1].
    std::vector<double> x, w;
    switch (npoints) {
    case 3:
        x = {-0.7745966692414834, 0.0, 0.7745966692414834};
        w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        break;
    case 5:
        x = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
             0.9061798459386640};
        w = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
             0.4786286704993665, 0.2369268850561891};
        break;
    default:
        throw Error(ErrorCode::InvalidConfig, "unsupported quadrature point count");
    }
    rule.points.resize(x.size());
    rule.weights.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        rule.points[i] = 0.5 * (x[i] + 1.0);
        rule.weights[i] = 0.5 * w[i];
    }
    rule.exact_degree = 2 * npoints - 1;
    return rule;
}

void hermite_shapes(double xi, double h, double N[4], double dN[4], double d2N[4],
                    double d3N[4]) {
    const double xi2 = xi * xi;
    const double xi3 = xi2 * xi;

    N[0] = 1.0 - 3.0 * xi2 + 2.0 * xi3;
    N[1] = h * (xi - 2.0 * xi2 + xi3);
    N[2] = 3.0 * xi2 - 2.0 * xi3;
    N[3] = h * (-xi2 + xi3);

    const double ih = 1.0 / h;
    dN[0] = (-6.0 * xi + 6.0 * xi2) * ih;
    dN[1] = 1.0 - 4.0 * xi + 3.0 * xi2;
    dN[2] = (6.0 * xi - 6.0 * xi2) * ih;
    dN[3] = -2.0 * xi + 3.0 * xi2;

    const double ih2 = ih * ih;
    d2N[0] = (-6.0 + 12.0 * xi) * ih2;
    d2N[1] = (-4.0 + 6.0 * xi) * ih;
    d2N[2] = (6.0 - 12.0 * xi) * ih2;
    d2N[3] = (-2.0 + 6.0 * xi) * ih;

    d3N[0] = 12.0 * ih2 * ih;
    d3N[1] = 6.0 * ih2;
    d3N[2] = -12.0 * ih2 * ih;
    d3N[3] = 6.0 * ih2;
}

void quadratic_shapes(double xi, double h, double P[3], double dP[3]) {
    P[0] = 2.0 * xi * xi - 3.0 * xi + 1.0;
    P[1] = 4.0 * xi * (1.0 - xi);
    P[2] = xi * (2.0 * xi - 1.0);

    const double ih = 1.0 / h;
    dP[0] = (4.0 * xi - 3.0) * ih;
    dP[1] = (4.0 - 8.0 * xi) * ih;
    dP[2] = (4.0 * xi - 1.0) * ih;
}

namespace {

std::vector<double> uniform_nodes(double a, double b, int n) {
    std::vector<double> nodes(n + 1);
    for (int i = 0; i <= n; ++i)
        nodes[i] = a + (b - a) * static_cast<double>(i) / n;
    nodes.front() = a;
    nodes.back() = b;
    return nodes;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : s) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace

DiscreteSpace build_space(const BeamParameters& p, int n_left, int n_right) {
    ValidationReport report = validate_parameters(p, Forcing{}, RunMode::Simulation);
    if (!report.runnable())
        throw Error(ErrorCode::InvalidConfig, report.errors.front().message);
    if (n_left < 2 || n_right < 2)
        throw Error(ErrorCode::MeshTooCoarse, "at least 2 elements per segment required");

    DiscreteSpace space;
    space.mesh.nodes_left = uniform_nodes(0.0, p.L0, n_left);
    space.mesh.nodes_right = uniform_nodes(p.L0, p.L, n_right);
    space.mesh.interface_index = n_left;
    space.quad = gauss_rule(5);

    // Transverse numbering: (value, slope) per node, left nodes then the
    // right-segment nodes past the shared one. phi(0)=phi_x(0)=0 are
    // eliminated, u(L)=0 is eliminated, interface DOFs are shared.
    const int nodes_l = n_left + 1;
    const int nodes_r = n_right + 1;
    std::vector<int> tval(nodes_l + nodes_r - 1, -1), tslope(nodes_l + nodes_r - 1, -1);
    int next = 0;
    for (int k = 0; k < nodes_l + nodes_r - 1; ++k) {
        const bool clamped_end = (k == 0);
        const bool supported_end = (k == nodes_l + nodes_r - 2);
        if (!clamped_end && !supported_end) {
            tval[k] = next++;
            tslope[k] = next++;
        } else if (supported_end) {
            tslope[k] = next++; // u(L)=0 but the end slope stays free
        }
    }
    const int n_transverse = next;

    auto trans_elem = [&](int node_a) {
        return std::array<int, 4>{tval[node_a], tslope[node_a], tval[node_a + 1],
                                  tslope[node_a + 1]};
    };
    for (int e = 0; e < n_left; ++e)
        space.dofs.trans_left.push_back(trans_elem(e));
    for (int e = 0; e < n_right; ++e)
        space.dofs.trans_right.push_back(trans_elem(n_left + e));

    // Longitudinal numbering: vertex and midside values in coordinate
    // order. omega(0)=0 and v(L)=0 eliminated, interface value shared.
    const int lverts = nodes_l + nodes_r - 1;
    const int lmids = n_left + n_right;
    std::vector<int> lvert(lverts, -1), lmid(lmids, -1);
    int lnext = 0;
    for (int k = 0; k < lverts; ++k) {
        const bool left_end = (k == 0);
        const bool right_end = (k == lverts - 1);
        if (!left_end && !right_end)
            lvert[k] = lnext++;
        if (k < lmids)
            lmid[k] = lnext++;
    }
    const int n_longitudinal = lnext;

    auto long_elem = [&](int e) {
        return std::array<int, 3>{lvert[e], lmid[e], lvert[e + 1]};
    };
    for (int e = 0; e < n_left; ++e)
        space.dofs.long_left.push_back(long_elem(e));
    for (int e = 0; e < n_right; ++e)
        space.dofs.long_right.push_back(long_elem(n_left + e));

    // Longitudinal indices are offset past the transverse block.
    for (auto* block : {&space.dofs.long_left, &space.dofs.long_right})
        for (auto& dofs : *block)
            for (int& d : dofs)
                if (d >= 0) d += n_transverse;

    space.dofs.n_transverse = n_transverse;
    space.dofs.n_longitudinal = n_longitudinal;

    std::ostringstream id;
    id << "transbeam-layout-v1;" << n_left << ";" << n_right << ";";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g;%.17g", p.L0, p.L);
    id << buf;
    space.layout_hash = fnv1a(id.str());

    return space;
}

State zero_state(const DiscreteSpace& space) {
    State s;
    s.z = Vec::Zero(space.dofs.n_total());
    s.v = Vec::Zero(space.dofs.n_total());
    return s;
}

std::vector<ElementView> elements(const DiscreteSpace& space) {
    std::vector<ElementView> out;
    const auto& mesh = space.mesh;
    for (int e = 0; e < mesh.n_left(); ++e) {
        ElementView ev;
        ev.xa = mesh.nodes_left[e];
        ev.h = mesh.nodes_left[e + 1] - mesh.nodes_left[e];
        ev.segment = 0;
        ev.tdofs = space.dofs.trans_left[e];
        ev.ldofs = space.dofs.long_left[e];
        out.push_back(ev);
    }
    for (int e = 0; e < mesh.n_right(); ++e) {
        ElementView ev;
        ev.xa = mesh.nodes_right[e];
        ev.h = mesh.nodes_right[e + 1] - mesh.nodes_right[e];
        ev.segment = 1;
        ev.tdofs = space.dofs.trans_right[e];
        ev.ldofs = space.dofs.long_right[e];
        out.push_back(ev);
    }
    return out;
}

SmoothFn zero_fn() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

SmoothFn poly_fn(std::vector<double> coeffs) {
    Polynomial poly{std::move(coeffs)};
    Polynomial dpoly;
    for (size_t i = 1; i < poly.coeffs.size(); ++i)
        dpoly.coeffs.push_back(static_cast<double>(i) * poly.coeffs[i]);
    return {[poly](double x) { return poly(x); }, [dpoly](double x) { return dpoly(x); }};
}

InitialData::InitialData()
    : phi0(zero_fn()), phi1(zero_fn()), u0(zero_fn()), u1(zero_fn()),
      omega0([](double) { return 0.0; }), omega1([](double) { return 0.0; }),
      v0([](double) { return 0.0; }), v1([](double) { return 0.0; }) {}

namespace {

constexpr double kBcTol = 1e-12;

void check_bc(std::vector<std::string>& issues, const char* what, double value) {
    if (std::abs(value) > kBcTol) {
        std::ostringstream msg;
        msg << what << " = " << value;
        issues.push_back(msg.str());
    }
}

} // namespace

State interpolate_initial(const DiscreteSpace& space, const InitialData& d) {
    const double L0 = space.mesh.L0();
    const double L = space.mesh.L();

    std::vector<std::string> issues;
    check_bc(issues, "phi0(0)", d.phi0.f(0.0));
    check_bc(issues, "phi0'(0)", d.phi0.df(0.0));
    check_bc(issues, "omega0(0)", d.omega0(0.0));
    check_bc(issues, "u0(L)", d.u0.f(L));
    check_bc(issues, "v0(L)", d.v0(L));
    check_bc(issues, "phi0(L0)-u0(L0)", d.phi0.f(L0) - d.u0.f(L0));
    check_bc(issues, "phi0'(L0)-u0'(L0)", d.phi0.df(L0) - d.u0.df(L0));
    check_bc(issues, "omega0(L0)-v0(L0)", d.omega0(L0) - d.v0(L0));
    // Velocities live in the same constrained FE space.
    check_bc(issues, "phi1(0)", d.phi1.f(0.0));
    check_bc(issues, "phi1'(0)", d.phi1.df(0.0));
    check_bc(issues, "omega1(0)", d.omega1(0.0));
    check_bc(issues, "u1(L)", d.u1.f(L));
    check_bc(issues, "v1(L)", d.v1(L));
    check_bc(issues, "phi1(L0)-u1(L0)", d.phi1.f(L0) - d.u1.f(L0));
    check_bc(issues, "phi1'(L0)-u1'(L0)", d.phi1.df(L0) - d.u1.df(L0));
    check_bc(issues, "omega1(L0)-v1(L0)", d.omega1(L0) - d.v1(L0));

    if (!issues.empty()) {
        std::string msg = "initial data violates essential/transmission conditions:";
        for (const auto& s : issues) msg += " " + s + ";";
        throw Error(ErrorCode::BcIncompatible, msg);
    }

    State state = zero_state(space);

    auto set_if_free = [](Vec& vec, int dof, double value) {
        if (dof >= 0) vec[dof] = value;
    };

    auto fill_transverse = [&](const std::vector<std::array<int, 4>>& map,
                               const std::vector<double>& nodes, const SmoothFn& disp,
                               const SmoothFn& vel) {
        for (size_t e = 0; e < map.size(); ++e) {
            const double xa = nodes[e], xb = nodes[e + 1];
            set_if_free(state.z, map[e][0], disp.f(xa));
            set_if_free(state.z, map[e][1], disp.df(xa));
            set_if_free(state.z, map[e][2], disp.f(xb));
            set_if_free(state.z, map[e][3], disp.df(xb));
            set_if_free(state.v, map[e][0], vel.f(xa));
            set_if_free(state.v, map[e][1], vel.df(xa));
            set_if_free(state.v, map[e][2], vel.f(xb));
            set_if_free(state.v, map[e][3], vel.df(xb));
        }
    };
    fill_transverse(space.dofs.trans_left, space.mesh.nodes_left, d.phi0, d.phi1);
    fill_transverse(space.dofs.trans_right, space.mesh.nodes_right, d.u0, d.u1);

    auto fill_longitudinal = [&](const std::vector<std::array<int, 3>>& map,
                                 const std::vector<double>& nodes,
                                 const std::function<double(double)>& disp,
                                 const std::function<double(double)>& vel) {
        for (size_t e = 0; e < map.size(); ++e) {
            const double xa = nodes[e], xb = nodes[e + 1];
            const double xm = 0.5 * (xa + xb);
            set_if_free(state.z, map[e][0], disp(xa));
            set_if_free(state.z, map[e][1], disp(xm));
            set_if_free(state.z, map[e][2], disp(xb));
            set_if_free(state.v, map[e][0], vel(xa));
            set_if_free(state.v, map[e][1], vel(xm));
            set_if_free(state.v, map[e][2], vel(xb));
        }
    };
    fill_longitudinal(space.dofs.long_left, space.mesh.nodes_left, d.omega0, d.omega1);
    fill_longitudinal(space.dofs.long_right, space.mesh.nodes_right, d.v0, d.v1);

    return state;
}

namespace {

// Element index containing x; at an interior node the left element is
// selected by convention.
int locate(const std::vector<double>& nodes, double x) {
    const int n_el = static_cast<int>(nodes.size()) - 1;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    int idx = static_cast<int>(it - nodes.begin()) - 1;
    return std::clamp(idx, 0, n_el - 1);
}

double gather(const Vec& coeffs, const std::array<int, 4>& dofs, const double* basis) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        if (dofs[i] >= 0) acc += coeffs[dofs[i]] * basis[i];
    return acc;
}

double gather(const Vec& coeffs, const std::array<int, 3>& dofs, const double* basis) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
        if (dofs[i] >= 0) acc += coeffs[dofs[i]] * basis[i];
    return acc;
}

} // namespace

double evaluate_vector(const DiscreteSpace& space, const Vec& coeffs, Field field,
                       int deriv, double x) {
    const bool transverse = is_transverse(field);
    const bool left = (field == Field::Phi || field == Field::Omega);
    const auto& nodes = left ? space.mesh.nodes_left : space.mesh.nodes_right;

    const double seg_a = nodes.front(), seg_b = nodes.back();
    const double tol = 1e-12 * (space.mesh.L());
    if (x < seg_a - tol || x > seg_b + tol)
        throw Error(ErrorCode::OutOfSegment, "coordinate outside the field segment");
    x = std::clamp(x, seg_a, seg_b);

    if (deriv < 0 || (transverse && deriv > 2) || (!transverse && deriv > 1))
        throw Error(ErrorCode::OrderUnsupported, "derivative order not supported");

    const int e = locate(nodes, x);
    const double h = nodes[e + 1] - nodes[e];
    const double xi = (x - nodes[e]) / h;

    if (transverse) {
        const auto& map = left ? space.dofs.trans_left : space.dofs.trans_right;
        double N[4], dN[4], d2N[4], d3N[4];
        hermite_shapes(xi, h, N, dN, d2N, d3N);
        const double* basis = (deriv == 0) ? N : (deriv == 1 ? dN : d2N);
        return gather(coeffs, map[e], basis);
    }
    const auto& map = left ? space.dofs.long_left : space.dofs.long_right;
    double P[3], dP[3];
    quadratic_shapes(xi, h, P, dP);
    return gather(coeffs, map[e], deriv == 0 ? P : dP);
}

double evaluate(const DiscreteSpace& space, const State& state, Field field, int deriv,
                double x) {
    return evaluate_vector(space, state.z, field, deriv, x);
}

double evaluate_third_derivative(const DiscreteSpace& space, const Vec& coeffs,
                                 Field field, double x) {
    if (!is_transverse(field))
        throw Error(ErrorCode::OrderUnsupported,
                    "third derivative defined for transverse fields only");
    const bool left = (field == Field::Phi);
    const auto& nodes = left ? space.mesh.nodes_left : space.mesh.nodes_right;
    const auto& map = left ? space.dofs.trans_left : space.dofs.trans_right;

    const double tol = 1e-12 * space.mesh.L();
    if (x < nodes.front() - tol || x > nodes.back() + tol)
        throw Error(ErrorCode::OutOfSegment, "coordinate outside the field segment");
    x = std::clamp(x, nodes.front(), nodes.back());

    const int e = locate(nodes, x);
    const double h = nodes[e + 1] - nodes[e];
    double N[4], dN[4], d2N[4], d3N[4];
    hermite_shapes(0.5, h, N, dN, d2N, d3N); // third derivative is constant per element
    return gather(coeffs, map[e], d3N);
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::DegenerateGeometry: return "DEGENERATE_GEOMETRY";
    case ErrorCode::MeshTooCoarse: return "MESH_TOO_COARSE";
    case ErrorCode::BcIncompatible: return "BC_INCOMPATIBLE";
    case ErrorCode::OutOfSegment: return "OUT_OF_SEGMENT";
    case ErrorCode::OrderUnsupported: return "ORDER_UNSUPPORTED";
    case ErrorCode::NewtonDiverged: return "NEWTON_DIVERGED";
    case ErrorCode::LinearSolveSingular: return "LINEAR_SOLVE_SINGULAR";
    case ErrorCode::SingularTangent: return "SINGULAR_TANGENT";
    case ErrorCode::CountTooLarge: return "COUNT_TOO_LARGE";
    case ErrorCode::InfeasibleMultiplier: return "INFEASIBLE_MULTIPLIER";
    case ErrorCode::ConstraintViolated: return "CONSTRAINT_VIOLATED";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::ZeroDenominator: return "ZERO_DENOMINATOR";
    case ErrorCode::AttractorModeViolation: return "ATTRACTOR_MODE_VIOLATION";
    case ErrorCode::IoFailure: return "IO_FAILURE";
    }
    return "UNKNOWN";
}

} // namespace transbeam
