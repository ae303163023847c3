#pragma once

#include <cstdint>
#include <vector>

#include "mhdwild/base.hpp"
#include "mhdwild/state.hpp"

namespace mhdwild {

// Uniform cell grid over [0,T] x box. Fields live as cell samples (the cell
// value is the field's constant value on the closed cell box); the linear
// index order fixes all tie-breaks and reductions.
struct Grid3 {
    int nt = 1, nx = 1, ny = 1;
    double T = 1.0;
    Rect box{0.0, 1.0, 0.0, 1.0};

    double dt() const { return T / nt; }
    double hx() const { return box.width() / nx; }
    double hy() const { return box.height() / ny; }
    double cell_volume() const { return dt() * hx() * hy(); }

    double tc(int it) const { return (it + 0.5) * dt(); }
    double xc(int ix) const { return box.x0 + (ix + 0.5) * hx(); }
    double yc(int iy) const { return box.y0 + (iy + 0.5) * hy(); }

    std::size_t size() const {
        return static_cast<std::size_t>(nt) * nx * ny;
    }
    std::size_t index(int it, int ix, int iy) const {
        return (static_cast<std::size_t>(it) * nx + ix) * ny + iy;
    }
    // max cell extent, the h in quadrature bounds K h^2
    double h() const {
        const double a = dt() > hx() ? dt() : hx();
        return a > hy() ? a : hy();
    }
};

// Single-piece subsolution field: per-cell (m, U) over [0,T] x Q with the
// piece constants. The t -> 0+ trace is slab it = 0.
struct SubsolutionField {
    Grid3 grid;
    double rho = 1.0;
    double C = 1.0;
    std::uint64_t seed = 0;
    long iterations = 0;
    std::vector<Vec2> m;
    std::vector<Sym2TF> U;

    SubsolutionField() = default;
    // zero subsolution; rejects degenerate problems with sqrt(2 rho C) < 1e-12
    SubsolutionField(const Grid3& g, double rho_, double C_, std::uint64_t seed_);

    SubsolutionState state(std::size_t i) const { return {m[i], U[i]}; }
    void add(std::size_t i, const SubsolutionState& dz) {
        m[i] += dz.m;
        U[i] += dz.U;
    }
};

// integral over [0,T] x Q of (C - e(z)), e the relaxed gap
double deficit(const SubsolutionField& f);
// same with the kinetic density instead of the gap
double kinetic_deficit(const SubsolutionField& f);
// slab-0 integral over Q of (C - kinetic density), the t -> 0+ trace quality
double trace_kinetic_deficit(const SubsolutionField& f);
// largest relaxed gap violation max(e - C) over cells, for invariant checks
double max_gap_excess(const SubsolutionField& f);

}  // namespace mhdwild
