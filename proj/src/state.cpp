#include "mhdwild/state.hpp"

#include <algorithm>
#include <cmath>

#include "mhdwild/tuning.hpp"

namespace mhdwild {

double relaxed_gap(const SubsolutionState& z, double rho) {
    return gap_matrix(z, rho).lambda_max();
}

Vec2 top_eigenvector(const Sym2& g) {
    const double lam = g.lambda_max();
    // (g - lam I) w = 0; pick the row combination with the larger norm
    Vec2 a{g.a12, lam - g.a11};
    Vec2 b{lam - g.a22, g.a12};
    Vec2 w = a.norm2() >= b.norm2() ? a : b;
    const double n = w.norm();
    if (n < 1e-300) return {1.0, 0.0};
    return w * (1.0 / n);
}

WaveDir wave_direction(double alpha, double tau) {
    WaveDir d;
    d.alpha = alpha;
    d.tau = tau;
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    d.xi_sp = {ca, sa};
    d.mhat = {sa, -ca};
    const double c2 = ca * ca - sa * sa, s2 = 2.0 * sa * ca;
    d.Uhat = Sym2TF{-s2, c2} * tau;
    return d;
}

double segment_half_length(const SubsolutionState& z, double rho, double C,
                           const WaveDir& dir) {
    const double e0 = relaxed_gap(z, rho);
    if (!(e0 < C)) return 0.0;

    const SubsolutionState zh = dir.increment();
    const double inv = 1.0 / rho;
    // G(s) = G0 + s B + s^2 Q, Q = mhat (x) mhat / rho
    const Sym2 g0 = gap_matrix(z, rho);
    const Sym2 bmat{2.0 * z.m.x * zh.m.x * inv - zh.U.d,
                    (z.m.x * zh.m.y + z.m.y * zh.m.x) * inv - zh.U.o,
                    2.0 * z.m.y * zh.m.y * inv + zh.U.d};
    const Sym2 q = outer(zh.m, zh.m) * inv;

    auto worst = [&](double s) {
        const Sym2 lin = bmat * s;
        const Sym2 quad = q * (s * s);
        const double ep = (g0 + lin + quad).lambda_max();
        const double em = (g0 - lin + quad).lambda_max();
        return std::max(ep, em);
    };

    // q has eigenvalue |mhat|^2/rho = 1/rho > 0 along mhat, so worst(s) -> inf
    // and the bracket search terminates.
    double hi = std::sqrt(2.0 * rho * C);
    int guard = 0;
    while (worst(hi) <= C) {
        hi *= 2.0;
        if (++guard > 200) return hi;  // unreachable
    }
    double lo = 0.0;
    for (int it = 0; it < 52; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (worst(mid) <= C)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

AdmissibleSegment admissible_segment(const SubsolutionState& z, double rho, double C) {
    AdmissibleSegment best;
    best.lo = best.hi = z;
    const double e0 = relaxed_gap(z, rho);
    if (!(e0 < C)) return best;

    const double vscale = std::sqrt(2.0 * C / rho);
    const double taus[] = {0.0, 0.7 * vscale, -0.7 * vscale};

    auto consider = [&](double alpha) {
        for (double tau : taus) {
            const WaveDir d = wave_direction(alpha, tau);
            const double s = segment_half_length(z, rho, C, d);
            if (s > best.half_length) {
                best.half_length = s;
                best.dir = d;
            }
        }
    };

    constexpr int kScan = 16;
    for (int i = 0; i < kScan; ++i) consider(M_PI * i / kScan);
    // shear orthogonal to m: mhat . m = 0 at alpha = atan2(my, mx); this is the
    // direction behind the kappa length contract
    if (z.m.norm2() > 0.0) {
        const double am = std::atan2(z.m.y, z.m.x);
        consider(am);
        consider(am + 0.5 * M_PI);
    }

    best.lo = z + best.dir.increment() * (-best.half_length);
    best.hi = z + best.dir.increment() * best.half_length;
    return best;
}

}  // namespace mhdwild
