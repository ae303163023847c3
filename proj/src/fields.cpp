#include "mhdwild/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "mhdwild/tuning.hpp"

namespace mhdwild {

SubsolutionField::SubsolutionField(const Grid3& g, double rho_, double C_,
                                   std::uint64_t seed_)
    : grid(g), rho(rho_), C(C_), seed(seed_) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
    if (!(C > 0.0)) throw std::invalid_argument("C must be > 0");
    if (std::sqrt(2.0 * rho * C) < tune::kDegenerateAmplitude)
        throw std::invalid_argument("degenerate problem: sqrt(2 rho C) below 1e-12");
    if (g.nt < 1 || g.nx < 1 || g.ny < 1)
        throw std::invalid_argument("grid must have at least one cell per axis");
    m.assign(grid.size(), Vec2{});
    U.assign(grid.size(), Sym2TF{});
}

double deficit(const SubsolutionField& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < f.m.size(); ++i)
        sum += f.C - relaxed_gap(f.state(i), f.rho);
    return sum * f.grid.cell_volume();
}

double kinetic_deficit(const SubsolutionField& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < f.m.size(); ++i)
        sum += f.C - kinetic_density(f.state(i), f.rho);
    return sum * f.grid.cell_volume();
}

double trace_kinetic_deficit(const SubsolutionField& f) {
    double sum = 0.0;
    const std::size_t slab = static_cast<std::size_t>(f.grid.nx) * f.grid.ny;
    for (std::size_t i = 0; i < slab; ++i)
        sum += f.C - kinetic_density(f.state(i), f.rho);
    return sum * f.grid.hx() * f.grid.hy();
}

double max_gap_excess(const SubsolutionField& f) {
    double worst = -1e300;
    for (std::size_t i = 0; i < f.m.size(); ++i) {
        const double ex = relaxed_gap(f.state(i), f.rho) - f.C;
        if (ex > worst) worst = ex;
    }
    return worst;
}

}  // namespace mhdwild
