#pragma once

#include <vector>

#include "mhdwild/base.hpp"
#include "mhdwild/eos.hpp"

namespace mhdwild {

// One constant state on an open axis-aligned rectangle.
struct Piece {
    Rect box;
    double rho = 1.0;
    double p = 1.0;
    double b = 0.0;
};

// Piecewise-constant data on (0,Lx) x (0,Ly), final time T. Pieces tile the
// domain: pairwise disjoint interiors, closures covering the closure.
struct PiecewiseData {
    double Lx = 1.0;
    double Ly = 1.0;
    double T = 1.0;
    double gamma = 2.0;
    std::vector<Piece> pieces;
};

// Throws std::invalid_argument naming the offending field or piece (1-indexed).
void validate(const PiecewiseData& data);

// C_i = lambda - p_i - b_i^2/2, all strictly positive.
// Throws std::invalid_argument ("piece k requires Lambda > v") otherwise.
std::vector<double> compute_c_constants(const std::vector<Piece>& pieces, double lambda);
std::vector<double> compute_c_constants(const PiecewiseData& data, double lambda);

// Index of the piece whose closed box contains (x, y); ties broken by lowest
// index. Returns -1 if no piece contains the point.
int piece_at(const PiecewiseData& data, double x, double y);

// ---- pointwise energy algebra ----

inline double kinetic_energy_density(double rho, const Vec2& u) {
    return 0.5 * rho * u.norm2();
}

inline double magnetic_energy_density(double b) { return 0.5 * b * b; }

// E = 1/2 rho |u|^2 + rho e(rho, p) + 1/2 b^2
inline double total_energy_density(double gamma, double rho, double p,
                                   const Vec2& u, double b) {
    return kinetic_energy_density(rho, u) + rho * eos_internal_energy(gamma, rho, p) +
           magnetic_energy_density(b);
}

// coefficient of u in the energy flux: E + p + 1/2 b^2
inline double energy_flux_coefficient(double gamma, double rho, double p,
                                      const Vec2& u, double b) {
    return total_energy_density(gamma, rho, p, u, b) + p + magnetic_energy_density(b);
}

}  // namespace mhdwild
