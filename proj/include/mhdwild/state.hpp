#pragma once

#include "mhdwild/base.hpp"

namespace mhdwild {

// Pointwise subsolution variables: momentum m and the trace-free relaxation U
// of m (x) m / rho - 1/2 |m|^2/rho I.
struct SubsolutionState {
    Vec2 m;
    Sym2TF U;

    SubsolutionState() = default;
    SubsolutionState(const Vec2& m_, const Sym2TF& U_) : m(m_), U(U_) {}

    SubsolutionState operator+(const SubsolutionState& o) const {
        return {m + o.m, U + o.U};
    }
    SubsolutionState operator*(double s) const { return {m * s, U * s}; }
};

// The matrix whose largest eigenvalue is the relaxed gap.
inline Sym2 gap_matrix(const SubsolutionState& z, double rho) {
    const double inv = 1.0 / rho;
    return {z.m.x * z.m.x * inv - z.U.d, z.m.x * z.m.y * inv - z.U.o,
            z.m.y * z.m.y * inv + z.U.d};
}

// e(m, U) = lambda_max(m (x) m / rho - U).  Since U is trace-free the matrix
// has trace |m|^2/rho, so e >= 1/2 |m|^2/rho always.
double relaxed_gap(const SubsolutionState& z, double rho);

inline double kinetic_density(const SubsolutionState& z, double rho) {
    return 0.5 * z.m.norm2() / rho;
}

// Unit eigenvector of the largest eigenvalue of a symmetric matrix.
Vec2 top_eigenvector(const Sym2& g);

// A wave-cone direction of the linear system { dt m + Div U = 0, Div m = 0 }:
// space-time direction xi = (cos a, sin a, tau) (x, y, t components), unit
// momentum amplitude mhat = (sin a, -cos a), tensor amplitude
// Uhat = tau * [[-sin 2a, cos 2a], [cos 2a, sin 2a]].
// The plane wave z(x, t) = zhat h(xi . (x, t)) then solves the system exactly
// for any profile h: xi_sp . mhat = 0 and tau mhat + Uhat xi_sp = 0.
struct WaveDir {
    double alpha = 0.0;
    double tau = 0.0;
    Vec2 xi_sp;    // unit spatial direction (cos a, sin a)
    Vec2 mhat;     // unit momentum increment
    Sym2TF Uhat;

    SubsolutionState increment() const { return {mhat, Uhat}; }
};

WaveDir wave_direction(double alpha, double tau);

// Largest s such that e(z + c zhat) <= C for all c in [-s, s].  The gap is
// convex along the line, so the admissible set of c is an interval containing
// 0 whenever e(z) < C; returns 0 if e(z) >= C.
double segment_half_length(const SubsolutionState& z, double rho, double C,
                           const WaveDir& dir);

struct AdmissibleSegment {
    WaveDir dir;
    double half_length = 0.0;   // 0 means converged cell, no-op
    SubsolutionState lo, hi;    // z -/+ half_length * increment
};

// Best segment over a fixed direction scan (uniform alphas plus the two shear
// directions orthogonal to m, a few tau values).  Contract: for e(z) < C the
// returned half length is >= tune::kSegmentKappa * (C - e(z)) / sqrt(2 rho C),
// guaranteed by the orthogonal shear member of the scan.
AdmissibleSegment admissible_segment(const SubsolutionState& z, double rho, double C);

}  // namespace mhdwild
