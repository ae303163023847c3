#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace mhdwild {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Symmetric trace-free 2x2 matrix [[d, o], [o, -d]].
// Storing only two entries keeps trace(U) = 0 exact under all arithmetic.
struct Sym2TF {
    double d = 0.0;
    double o = 0.0;

    Sym2TF() = default;
    Sym2TF(double d_, double o_) : d(d_), o(o_) {}

    Sym2TF operator+(const Sym2TF& m) const { return {d + m.d, o + m.o}; }
    Sym2TF operator-(const Sym2TF& m) const { return {d - m.d, o - m.o}; }
    Sym2TF operator*(double s) const { return {d * s, o * s}; }
    Sym2TF& operator+=(const Sym2TF& m) { d += m.d; o += m.o; return *this; }
    Vec2 apply(const Vec2& v) const { return {d * v.x + o * v.y, o * v.x - d * v.y}; }
};

inline Sym2TF operator*(double s, const Sym2TF& m) { return m * s; }

// General symmetric 2x2, [[a11, a12], [a12, a22]].
struct Sym2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;

    Sym2() = default;
    Sym2(double a11_, double a12_, double a22_) : a11(a11_), a12(a12_), a22(a22_) {}

    double trace() const { return a11 + a22; }
    // Largest eigenvalue, closed form: trace/2 + sqrt of the shifted discriminant.
    double lambda_max() const {
        const double half_diff = 0.5 * (a11 - a22);
        return 0.5 * (a11 + a22) + std::hypot(half_diff, a12);
    }
    double lambda_min() const {
        const double half_diff = 0.5 * (a11 - a22);
        return 0.5 * (a11 + a22) - std::hypot(half_diff, a12);
    }
    Sym2 operator+(const Sym2& m) const { return {a11 + m.a11, a12 + m.a12, a22 + m.a22}; }
    Sym2 operator-(const Sym2& m) const { return {a11 - m.a11, a12 - m.a12, a22 - m.a22}; }
    Sym2 operator*(double s) const { return {a11 * s, a12 * s, a22 * s}; }
    double quad(const Vec2& v) const {
        return a11 * v.x * v.x + 2.0 * a12 * v.x * v.y + a22 * v.y * v.y;
    }
};

inline Sym2 outer(const Vec2& a, const Vec2& b) {
    return {a.x * b.x, 0.5 * (a.x * b.y + a.y * b.x), a.y * b.y};
}

inline Sym2 to_sym2(const Sym2TF& u) { return {u.d, u.o, -u.d}; }

// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

}  // namespace mhdwild
