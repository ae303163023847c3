#include "mhdwild/testfn.hpp"

#include <algorithm>
#include <stdexcept>

#include "mhdwild/rng.hpp"

namespace mhdwild {

namespace {

double poly_eval(const std::vector<double>& c, double s) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * s + c[k];
    return v;
}

double poly_eval_deriv(const std::vector<double>& c, double s) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) v = v * s + c[k] * static_cast<double>(k);
    return v;
}

// antiderivative with F(0) = 0
double poly_antideriv(const std::vector<double>& c, double s) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        v = v * s + c[k] / static_cast<double>(k + 1);
    }
    return v * s;
}

}  // namespace

double Factor1D::value(double u) const {
    const double s = (u - center) / half;
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return poly_eval(coef, s);
}

double Factor1D::deriv(double u) const {
    const double s = (u - center) / half;
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return poly_eval_deriv(coef, s) / half;
}

double Factor1D::integral(double a, double b) const {
    double s0 = (a - center) / half;
    double s1 = (b - center) / half;
    s0 = std::clamp(s0, -1.0, 1.0);
    s1 = std::clamp(s1, -1.0, 1.0);
    if (s1 <= s0) return 0.0;
    return half * (poly_antideriv(coef, s1) - poly_antideriv(coef, s0));
}

Factor1D bump_factor(double center, double half) {
    // (1 - s^2)^4
    return {center, half, {1.0, 0.0, -4.0, 0.0, 6.0, 0.0, -4.0, 0.0, 1.0}};
}

Factor1D bump_factor_with_wall(double center, double half, double L) {
    // u (L - u) at u = center + half s: quadratic in s
    const double w0 = center * (L - center);
    const double w1 = half * (L - 2.0 * center);
    const double w2 = -half * half;
    Factor1D base = bump_factor(center, half);
    std::vector<double> prod(base.coef.size() + 2, 0.0);
    for (std::size_t k = 0; k < base.coef.size(); ++k) {
        prod[k] += base.coef[k] * w0;
        prod[k + 1] += base.coef[k] * w1;
        prod[k + 2] += base.coef[k] * w2;
    }
    return {center, half, std::move(prod)};
}

double TestFunction::value(double t, double x, double y) const {
    return ft.value(t) * fx.value(x) * fy.value(y);
}

double TestFunction::dt(double t, double x, double y) const {
    return ft.deriv(t) * fx.value(x) * fy.value(y);
}

Vec2 TestFunction::grad(double t, double x, double y) const {
    const double vt = ft.value(t);
    return {vt * fx.deriv(x) * fy.value(y), vt * fx.value(x) * fy.deriv(y)};
}

Vec2 TestFunction::vec_value(double t, double x, double y) const {
    const double vt = ft.value(t);
    return {vt * fx1.value(x) * fy1.value(y), vt * fx2.value(x) * fy2.value(y)};
}

Vec2 TestFunction::vec_dt(double t, double x, double y) const {
    const double dvt = ft.deriv(t);
    return {dvt * fx1.value(x) * fy1.value(y), dvt * fx2.value(x) * fy2.value(y)};
}

double TestFunction::divergence(double t, double x, double y) const {
    const double vt = ft.value(t);
    return vt * (fx1.deriv(x) * fy1.value(y) + fx2.value(x) * fy2.deriv(y));
}

void TestFunction::jacobian(double t, double x, double y, double out[2][2]) const {
    const double vt = ft.value(t);
    out[0][0] = vt * fx1.deriv(x) * fy1.value(y);
    out[0][1] = vt * fx1.value(x) * fy1.deriv(y);
    out[1][0] = vt * fx2.deriv(x) * fy2.value(y);
    out[1][1] = vt * fx2.value(x) * fy2.deriv(y);
}

std::vector<TestFunction> make_test_suite(double Lx, double Ly, double T,
                                          std::uint64_t seed, int count) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    DetRng rng(split_seed(seed, 0x7e57));
    std::vector<TestFunction> suite;
    suite.reserve(count);
    for (int i = 0; i < count; ++i) {
        TestFunction f;
        f.kind = (i % 2 == 0) ? TestFunction::Kind::scalar : TestFunction::Kind::vector;

        // stratification: both kinds must cover t = 0 (vector members carry
        // the initial-data term, so an all-scalar t0 set would never probe
        // it) and both must cover the spatial boundary
        const bool want_t0 = (i % 4 == 0) || (i % 8 == 3);
        const bool want_wall = (i % 4 == 1) || (i % 8 == 6);

        const double th = rng.uniform(0.08, 0.3) * T;
        double tcen;
        if (want_t0) {
            tcen = rng.uniform(-0.5 * th, 0.8 * th);
        } else {
            tcen = rng.uniform(th, 0.97 * T - th);
        }
        // keep the support inside [0, T)
        if (tcen + th >= 0.97 * T) tcen = 0.97 * T - th - 0.01 * T;
        f.ft = bump_factor(tcen, th);

        auto spatial = [&](double L, bool touch) {
            const double half = rng.uniform(0.1, 0.35) * L;
            double cen;
            if (touch) {
                cen = (rng.uniform() < 0.5) ? rng.uniform(-0.3 * half, 0.8 * half)
                                            : L + rng.uniform(-0.8 * half, 0.3 * half);
            } else {
                cen = rng.uniform(half, L - half);
            }
            return std::pair<double, double>{cen, half};
        };

        const bool wall_x = want_wall && (rng.uniform() < 0.5);
        const bool wall_y = want_wall && !wall_x;
        if (f.kind == TestFunction::Kind::scalar) {
            auto [cx, hx] = spatial(Lx, wall_x);
            auto [cy, hy] = spatial(Ly, wall_y);
            f.fx = bump_factor(cx, hx);
            f.fy = bump_factor(cy, hy);
        } else {
            auto [cx1, hx1] = spatial(Lx, wall_x);
            auto [cy1, hy1] = spatial(Ly, wall_y);
            auto [cx2, hx2] = spatial(Lx, false);
            auto [cy2, hy2] = spatial(Ly, false);
            f.fx1 = bump_factor_with_wall(cx1, hx1, Lx);
            f.fy1 = bump_factor(cy1, hy1);
            f.fx2 = bump_factor(cx2, hx2);
            f.fy2 = bump_factor_with_wall(cy2, hy2, Ly);
        }
        suite.push_back(std::move(f));
    }
    return suite;
}

}  // namespace mhdwild
