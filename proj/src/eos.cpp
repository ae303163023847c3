#include "mhdwild/eos.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdwild {

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be > 0, got " +
                                    std::to_string(v));
    }
}

void check_gamma(double gamma) {
    if (!(gamma > 1.0)) {
        throw std::invalid_argument("gamma must be > 1, got " + std::to_string(gamma));
    }
}

}  // namespace

double BarotropicLaw::pressure(double rho) const {
    return k * std::pow(rho, exponent);
}

double eos_internal_energy(double gamma, double rho, double p) {
    check_gamma(gamma);
    check_positive(rho, "rho");
    check_positive(p, "p");
    return p / ((gamma - 1.0) * rho);
}

double eos_internal_energy(const BarotropicLaw& law, double rho) {
    check_positive(rho, "rho");
    return pressure_potential(rho, law.exponent, law.k) / rho;
}

double eos_specific_entropy(double gamma, double rho, double p) {
    check_gamma(gamma);
    check_positive(rho, "rho");
    check_positive(p, "p");
    return std::log(p * std::pow(rho, -gamma)) / (gamma - 1.0);
}

double eos_temperature(double gamma, double rho, double p) {
    check_gamma(gamma);
    check_positive(rho, "rho");
    check_positive(p, "p");
    return p / rho;
}

double pressure_potential(double rho, double gamma, double k,
                          PotentialConvention conv) {
    check_gamma(gamma);
    check_positive(rho, "rho");
    check_positive(k, "k");
    if (conv == PotentialConvention::gibbs) {
        // rho * int_1^rho k r^(gamma-2) dr
        return k * rho * (std::pow(rho, gamma - 1.0) - 1.0) / (gamma - 1.0);
    }
    // rho * int_1^rho k r^(gamma-1) dr
    return k * rho * (std::pow(rho, gamma) - 1.0) / gamma;
}

}  // namespace mhdwild
