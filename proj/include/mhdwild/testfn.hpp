#pragma once

#include <cstdint>
#include <vector>

#include "mhdwild/base.hpp"

namespace mhdwild {

// One separable factor of a test function: a polynomial in the normalized
// variable s = (u - center)/half on [-1, 1], zero outside. The base bump is
// (1 - s^2)^4; vector components carry the boundary factor multiplied in.
struct Factor1D {
    double center = 0.0;
    double half = 1.0;
    std::vector<double> coef;  // c[k] s^k

    double lo() const { return center - half; }
    double hi() const { return center + half; }

    double value(double u) const;
    double deriv(double u) const;   // d/du
    // exact integral of value over [a, b] (support clipping included)
    double integral(double a, double b) const;
};

Factor1D bump_factor(double center, double half);
// bump times the wall factor u (L - u), written in the s variable; vanishes
// at u = 0 and u = L exactly
Factor1D bump_factor_with_wall(double center, double half, double L);

// Smooth compactly supported test function on [0,T) x R^2.
// scalar: phi = ft(t) fx(x) fy(y).
// vector: phi_1 = ft(t) fx1(x) fy1(y), phi_2 = ft(t) fx2(x) fy2(y), where fx1
// and fy2 include the wall factors x(Lx - x), y(Ly - y), so phi . n = 0 on the
// domain boundary exactly.
struct TestFunction {
    enum class Kind { scalar, vector };
    Kind kind = Kind::scalar;

    Factor1D ft, fx, fy;          // scalar part
    Factor1D fx1, fy1, fx2, fy2;  // vector components (share ft)

    bool meets_t0() const { return ft.lo() < 0.0; }

    double value(double t, double x, double y) const;          // scalar
    double dt(double t, double x, double y) const;
    Vec2 grad(double t, double x, double y) const;

    Vec2 vec_value(double t, double x, double y) const;        // vector
    Vec2 vec_dt(double t, double x, double y) const;
    double divergence(double t, double x, double y) const;
    // gradient matrix G_ij = d phi_i / d x_j
    void jacobian(double t, double x, double y, double out[2][2]) const;
};

// Seeded suite over domain (0,Lx) x (0,Ly), time [0,T). Alternates scalar and
// vector kinds; at least a quarter of the supports meet t = 0 and at least a
// quarter meet the spatial boundary.
std::vector<TestFunction> make_test_suite(double Lx, double Ly, double T,
                                          std::uint64_t seed, int count);

}  // namespace mhdwild
