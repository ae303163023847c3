#pragma once

#include <string>

namespace mhdwild {

// Integrand convention for the pressure potential P(rho) = rho * I(rho),
// I(rho) = integral from 1 to rho of p(r)/r^2 dr.  The gibbs convention is
// the one compatible with rho*e = P(rho) for the gamma-law internal energy;
// the literal convention (integrand p(r)/r) is kept for annotation purposes
// only and is not used by any pipeline.
enum class PotentialConvention { gibbs, literal };

// gamma-law gas, p = k rho^gamma along isentropes.
struct BarotropicLaw {
    double k = 1.0;
    double exponent = 2.0;

    double pressure(double rho) const;
};

// e = p / ((gamma - 1) rho)
double eos_internal_energy(double gamma, double rho, double p);

// Override used by the isentropic pipeline: internal energy induced by a
// barotropic law through the pressure potential, e(rho) = P(rho) / rho.
double eos_internal_energy(const BarotropicLaw& law, double rho);

// s = ln(p rho^-gamma) / (gamma - 1); zero on the rho^gamma = p isentrope
// through (1, 1).
double eos_specific_entropy(double gamma, double rho, double p);

// theta = p / rho, the temperature paired with the entropy normalization
// above: theta ds = de - (p / rho^2) drho.
double eos_temperature(double gamma, double rho, double p);

// P(rho) = rho * integral_1^rho p(r)/r^2 dr for p(r) = k r^gamma (closed form).
double pressure_potential(double rho, double gamma, double k = 1.0,
                          PotentialConvention conv = PotentialConvention::gibbs);

}  // namespace mhdwild
