#pragma once

#include <string>
#include <vector>

namespace transbeam {

/// Physical constants of the two-segment beam. The damped von Karman
/// segment occupies (0, L0), the undamped one (L0, L).
struct BeamParameters {
    double beta1 = 1.0;   ///< transverse mass density, damped segment
    double beta2 = 1.0;   ///< transverse mass density, undamped segment
    double rho1 = 1.0;    ///< longitudinal mass density, damped segment
    double rho2 = 1.0;    ///< longitudinal mass density, undamped segment
    double mu1 = 1.0;     ///< rotational inertia, damped segment
    double mu2 = 1.0;     ///< rotational inertia, undamped segment
    double lambda1 = 1.0; ///< bending stiffness, damped segment
    double lambda2 = 1.0; ///< bending stiffness, undamped segment
    double kappa = 1.0;   ///< structural damping coefficient (damped segment)
    double gamma = 1.0;   ///< longitudinal damping coefficient (damped segment)
    double L0 = 0.5;      ///< interface coordinate
    double L = 1.0;       ///< total length
};

/// Spatial polynomial, coefficients in ascending power order.
/// An empty coefficient list is identically zero.
struct Polynomial {
    std::vector<double> coeffs;

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }
    bool is_zero() const {
        for (double c : coeffs)
            if (c != 0.0) return false;
        return true;
    }
    int degree() const { return coeffs.empty() ? -1 : static_cast<int>(coeffs.size()) - 1; }
};

/// Autonomous forcing, one spatial polynomial per field.
/// g1 acts on the transverse field of (0, L0), g2 on the longitudinal
/// field of (0, L0), g3/g4 likewise on (L0, L).
struct Forcing {
    Polynomial g1, g2, g3, g4;

    bool all_zero() const {
        return g1.is_zero() && g2.is_zero() && g3.is_zero() && g4.is_zero();
    }
};

enum class RunMode { Simulation, Attractor };

struct Finding {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> errors;
    std::vector<Finding> warnings;

    bool runnable() const { return errors.empty(); }
};

/// Checks positivity of all coefficients and the geometry, flags
/// violations of the coefficient ordering hypothesis as warnings (it is
/// needed only for the long-time theory, not for well-posedness), and in
/// attractor mode rejects longitudinal forcing.
ValidationReport validate_parameters(const BeamParameters& p, const Forcing& f, RunMode mode);

} // namespace transbeam
