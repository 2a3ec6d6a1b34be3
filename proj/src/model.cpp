#include "transbeam/model.hpp"

#include <cmath>
#include <sstream>

namespace transbeam {

namespace {

void require_positive(std::vector<Finding>& errors, const char* name, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be strictly positive, got " << value;
        errors.push_back({"NONPOSITIVE_COEFFICIENT", msg.str()});
    }
}

} // namespace

ValidationReport validate_parameters(const BeamParameters& p, const Forcing& f, RunMode mode) {
    ValidationReport report;

    require_positive(report.errors, "beta1", p.beta1);
    require_positive(report.errors, "beta2", p.beta2);
    require_positive(report.errors, "rho1", p.rho1);
    require_positive(report.errors, "rho2", p.rho2);
    require_positive(report.errors, "mu1", p.mu1);
    require_positive(report.errors, "mu2", p.mu2);
    require_positive(report.errors, "lambda1", p.lambda1);
    require_positive(report.errors, "lambda2", p.lambda2);
    require_positive(report.errors, "kappa", p.kappa);
    require_positive(report.errors, "gamma", p.gamma);

    if (!(p.L0 > 0.0 && p.L0 < p.L) || !std::isfinite(p.L0) || !std::isfinite(p.L)) {
        std::ostringstream msg;
        msg << "interface must satisfy 0 < L0 < L, got L0=" << p.L0 << ", L=" << p.L;
        report.errors.push_back({"DEGENERATE_GEOMETRY", msg.str()});
    }

    for (const auto* g : {&f.g1, &f.g2, &f.g3, &f.g4}) {
        if (g->degree() > 3) {
            report.errors.push_back(
                {"FORCING_DEGREE", "forcing polynomials are limited to degree 3"});
            break;
        }
    }

    // Ordering hypothesis of the decay theory; the evolution itself does
    // not need it, so a violation only warns.
    std::ostringstream koef;
    bool koef_ok = true;
    if (!(p.beta1 >= p.beta2)) { koef << " beta1>=beta2"; koef_ok = false; }
    if (!(p.rho1 >= p.rho2)) { koef << " rho1>=rho2"; koef_ok = false; }
    if (!(p.mu1 >= p.mu2)) { koef << " mu1>=mu2"; koef_ok = false; }
    if (!(p.lambda1 <= p.lambda2)) { koef << " lambda1<=lambda2"; koef_ok = false; }
    if (!koef_ok) {
        report.warnings.push_back(
            {"KOEF_VIOLATED",
             "coefficient ordering hypothesis fails:" + koef.str() +
                 "; long-time decay diagnostics may not apply"});
    }

    if (mode == RunMode::Attractor) {
        if (!f.g2.is_zero() || !f.g4.is_zero()) {
            report.errors.push_back(
                {"ATTRACTOR_MODE_VIOLATION",
                 "attractor mode requires zero longitudinal forcing (g2 = g4 = 0)"});
        }
    }

    return report;
}

} // namespace transbeam
