#include "mhdwild/wave.hpp"

#include <cmath>
#include <stdexcept>

#include "mhdwild/tuning.hpp"

namespace mhdwild {

namespace {

constexpr int kJ = tune::kProfileHarmonics;

struct ProfileCoefs {
    double a[kJ + 1];
    double peak;
    double mean_sq;

    ProfileCoefs() {
        double msq = 0.0;
        for (int j = 1; j <= kJ; ++j) {
            const double x = M_PI * j / (kJ + 1);
            const double sigma = std::sin(x) / x;
            a[j] = (2.0 / M_PI) * ((j % 2 == 1) ? 1.0 : -1.0) * sigma / j;
            msq += 0.5 * a[j] * a[j];
        }
        mean_sq = msq;
        double pk = 0.0;
        for (int i = 0; i < 4096; ++i) {
            double h = 0.0;
            const double th = 2.0 * M_PI * i / 4096.0;
            for (int j = 1; j <= kJ; ++j) h += a[j] * std::sin(j * th);
            if (std::abs(h) > pk) pk = std::abs(h);
        }
        peak = pk;
    }
};

const ProfileCoefs& coefs() {
    static const ProfileCoefs c;
    return c;
}

}  // namespace

double profile_h(double theta) {
    const auto& c = coefs();
    double h = 0.0;
    for (int j = 1; j <= kJ; ++j) h += c.a[j] * std::sin(j * theta);
    return h;
}

double profile_P(int n, double theta) {
    const auto& c = coefs();
    double v = 0.0;
    switch (n) {
        case 0:
            for (int j = 1; j <= kJ; ++j) v += c.a[j] * std::cos(j * theta) / (j * j * j);
            return v;
        case 1:
            for (int j = 1; j <= kJ; ++j) v -= c.a[j] * std::sin(j * theta) / (j * j);
            return v;
        case 2:
            for (int j = 1; j <= kJ; ++j) v -= c.a[j] * std::cos(j * theta) / j;
            return v;
        case 3:
            return profile_h(theta);
        default:
            throw std::invalid_argument("profile derivative order must be 0..3");
    }
}

double profile_peak() { return coefs().peak; }
double profile_mean_square() { return coefs().mean_sq; }

namespace {

// smoothstep with three vanishing derivatives at both ends
inline double ss(int n, double w) {
    switch (n) {
        case 0: return w * w * w * w * (35.0 + w * (-84.0 + w * (70.0 - 20.0 * w)));
        case 1: return 140.0 * w * w * w * (1.0 - w) * (1.0 - w) * (1.0 - w);
        case 2: return 420.0 * w * w * (1.0 - w) * (1.0 - w) * (1.0 - 2.0 * w);
        default: return 840.0 * w * (1.0 - 6.0 * w + 10.0 * w * w - 5.0 * w * w * w);
    }
}

}  // namespace

double PlateauBump::eval(int n, double u) const {
    if (u <= lo || u >= hi) return 0.0;
    if (u < lo + roll) {
        const double w = (u - lo) / roll;
        const double chain = std::pow(1.0 / roll, n);
        return ss(n, w) * chain;
    }
    if (u > hi - roll) {
        const double w = (hi - u) / roll;
        const double chain = std::pow(-1.0 / roll, n);
        return ss(n, w) * chain;
    }
    return n == 0 ? 1.0 : 0.0;
}

SubsolutionState wave_increment(const WavePerturbation& w, double t, double x, double y) {
    if (!w.supported_at(t, x, y) || w.amplitude == 0.0) return {};

    const double omega = 2.0 * M_PI * w.k;
    const double tc = 0.5 * (w.bt.lo + w.bt.hi);
    const double xc = 0.5 * (w.bx.lo + w.bx.hi);
    const double yc = 0.5 * (w.by.lo + w.by.hi);
    const double ca = w.dir.xi_sp.x, sa = w.dir.xi_sp.y, tau = w.dir.tau;

    const double s = ca * (x - xc) + sa * (y - yc) + tau * (t - tc);
    const double theta = omega * s + w.phase0;

    double c1[2], c2[4], c3[4];  // bump derivatives
    for (int n = 0; n < 2; ++n) c1[n] = w.bt.eval(n, t);
    for (int n = 0; n < 4; ++n) c2[n] = w.bx.eval(n, x);
    for (int n = 0; n < 4; ++n) c3[n] = w.by.eval(n, y);

    double P[7];  // omega^(n-3) P^(n)(theta); orders above 3 never occur
    for (int n = 0; n <= 3; ++n) P[n] = std::pow(omega, n - 3) * profile_P(n, theta);

    double ta[2] = {1.0, tau};
    double cp[4] = {1.0, ca, ca * ca, ca * ca * ca};
    double sp[4] = {1.0, sa, sa * sa, sa * sa * sa};
    static const double binom[4][4] = {
        {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

    auto D = [&](int at, int ax, int ay) {
        double sum = 0.0;
        for (int jt = 0; jt <= at; ++jt)
            for (int jx = 0; jx <= ax; ++jx)
                for (int jy = 0; jy <= ay; ++jy) {
                    const int n = (at - jt) + (ax - jx) + (ay - jy);
                    sum += binom[at][jt] * binom[ax][jx] * binom[ay][jy] * c1[jt] *
                           c2[jx] * c3[jy] * ta[at - jt] * cp[ax - jx] * sp[ay - jy] *
                           P[n];
                }
        return w.amplitude * sum;
    };

    SubsolutionState dz;
    dz.m.x = D(0, 2, 1) + D(0, 0, 3);
    dz.m.y = -D(0, 3, 0) - D(0, 1, 2);
    dz.U.d = -2.0 * D(1, 1, 1);
    dz.U.o = D(1, 2, 0) - D(1, 0, 2);
    return dz;
}

namespace {

void check_bump(const SubsolutionField& f, std::size_t cell, const WavePerturbation& w) {
    const Grid3& g = f.grid;
    if (cell >= g.size()) throw std::invalid_argument("cell index out of range");
    if (!(w.bt.lo > 0.0 && w.bt.hi < g.T && w.bx.lo > g.box.x0 && w.bx.hi < g.box.x1 &&
          w.by.lo > g.box.y0 && w.by.hi < g.box.y1))
        throw std::invalid_argument("bump exceeds the domain");
    // center must lie in the scheduled cell's box
    const int it = static_cast<int>(cell / (static_cast<std::size_t>(g.nx) * g.ny));
    const int ix = static_cast<int>(cell / g.ny % g.nx);
    const int iy = static_cast<int>(cell % g.ny);
    const double tc = 0.5 * (w.bt.lo + w.bt.hi);
    const double xc = 0.5 * (w.bx.lo + w.bx.hi);
    const double yc = 0.5 * (w.by.lo + w.by.hi);
    if (tc < it * g.dt() || tc > (it + 1) * g.dt() || xc < g.box.x0 + ix * g.hx() ||
        xc > g.box.x0 + (ix + 1) * g.hx() || yc < g.box.y0 + iy * g.hy() ||
        yc > g.box.y0 + (iy + 1) * g.hy())
        throw std::invalid_argument("bump is not centered in the scheduled cell");
    if (!(w.bt.roll > 0.0) || !(w.bx.roll > 0.0) || !(w.by.roll > 0.0) ||
        w.bt.roll * 2.0 > w.bt.hi - w.bt.lo || w.bx.roll * 2.0 > w.bx.hi - w.bx.lo ||
        w.by.roll * 2.0 > w.by.hi - w.by.lo)
        throw std::invalid_argument("bump rolloff exceeds its support");
}

}  // namespace

WaveSpan wave_span(const Grid3& g, const WavePerturbation& w) {
    WaveSpan s;
    s.t0 = std::max(0, static_cast<int>(std::floor((w.bt.lo) / g.dt() - 0.5)));
    s.t1 = std::min(g.nt - 1, static_cast<int>(std::ceil(w.bt.hi / g.dt())));
    s.x0 = std::max(0, static_cast<int>(std::floor((w.bx.lo - g.box.x0) / g.hx() - 0.5)));
    s.x1 = std::min(g.nx - 1, static_cast<int>(std::ceil((w.bx.hi - g.box.x0) / g.hx())));
    s.y0 = std::max(0, static_cast<int>(std::floor((w.by.lo - g.box.y0) / g.hy() - 0.5)));
    s.y1 = std::min(g.ny - 1, static_cast<int>(std::ceil((w.by.hi - g.box.y0) / g.hy())));
    return s;
}

void add_localized_wave_inplace(SubsolutionField& f, std::size_t cell,
                                const WavePerturbation& w) {
    check_bump(f, cell, w);
    if (w.amplitude == 0.0) return;
    const Grid3& g = f.grid;
    const WaveSpan sp = wave_span(g, w);
    for (int it = sp.t0; it <= sp.t1; ++it)
        for (int ix = sp.x0; ix <= sp.x1; ++ix)
            for (int iy = sp.y0; iy <= sp.y1; ++iy) {
                const SubsolutionState dz =
                    wave_increment(w, g.tc(it), g.xc(ix), g.yc(iy));
                if (dz.m.x != 0.0 || dz.m.y != 0.0 || dz.U.d != 0.0 || dz.U.o != 0.0)
                    f.add(g.index(it, ix, iy), dz);
            }
}

SubsolutionField add_localized_wave(const SubsolutionField& f, std::size_t cell,
                                    const WavePerturbation& w) {
    SubsolutionField out = f;
    add_localized_wave_inplace(out, cell, w);
    return out;
}

}  // namespace mhdwild
