#pragma once

#include <cstddef>

#include "mhdwild/fields.hpp"
#include "mhdwild/state.hpp"

namespace mhdwild {

// Oscillation profile: the truncated Fourier sawtooth with Lanczos sigma
// factors,
//   h(theta) = sum_j a_j sin(j theta),  a_j = (2/pi) (-1)^(j+1) sigma_j / j,
// which at one retained harmonic is a pure sine. The wave potential uses the
// third antiderivative P with P''' = h,
//   P(theta) = sum_j a_j cos(j theta) / j^3.
double profile_h(double theta);
// n-th derivative of P, n = 0..3 (P^(3) = h)
double profile_P(int n, double theta);
// max |h| over a period (precomputed constant)
double profile_peak();
// mean of h^2 over a period
double profile_mean_square();

// C^3 plateau bump on [lo, hi]: 0 outside, 1 on [lo+roll, hi-roll], smoothstep
// rolloffs with three vanishing derivatives at both seam ends.
struct PlateauBump {
    double lo = 0.0, hi = 1.0, roll = 0.25;

    // value and derivatives d^n/du^n, n = 0..3
    double eval(int n, double u) const;
};

// A localized potential wave. The scalar potential
//   g(t,x,y) = amplitude * chi_t(t) chi_x(x) chi_y(y) * P(omega s + phase0) / omega^3,
//   s = xi_sp . ((x,y) - bump center) + tau (t - bump t-center),  omega = 2 pi k,
// generates the increment through third derivatives:
//   dm = (d_y Lap g, -d_x Lap g),  dU = (-2 d_txy g, d_t(d_xx - d_yy) g),
// which satisfies d_t m + Div U = 0 and Div m = 0 identically, for any chi.
// On bump plateaus the increment is exactly (mhat, Uhat) * amplitude * h.
struct WavePerturbation {
    WaveDir dir;
    int k = 4;              // integer frequency, omega = 2 pi k
    double phase0 = 0.0;
    PlateauBump bt, bx, by;
    double amplitude = 0.0; // potential prefactor; momentum peak ~ amplitude * profile_peak()

    bool supported_at(double t, double x, double y) const {
        return t > bt.lo && t < bt.hi && x > bx.lo && x < bx.hi && y > by.lo && y < by.hi;
    }
};

// increment (dm, dU) of the wave at a space-time point
SubsolutionState wave_increment(const WavePerturbation& w, double t, double x, double y);

// Closed cell index ranges whose samples the wave support can intersect.
struct WaveSpan {
    int t0 = 0, t1 = -1, x0 = 0, x1 = -1, y0 = 0, y1 = -1;
};
WaveSpan wave_span(const Grid3& g, const WavePerturbation& w);

// Applies the wave to every cell sample in its support and returns the new
// field. The bump must be centered in the given cell and contained in
// (0,T) x interior(Q); otherwise throws. Zero amplitude returns the input
// unchanged bit-for-bit.
SubsolutionField add_localized_wave(const SubsolutionField& f, std::size_t cell,
                                    const WavePerturbation& w);

// In-place variant used by the iteration engine (same checks).
void add_localized_wave_inplace(SubsolutionField& f, std::size_t cell,
                                const WavePerturbation& w);

}  // namespace mhdwild
