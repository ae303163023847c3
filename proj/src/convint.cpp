#include "mhdwild/convint.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <unordered_map>

#include "mhdwild/rng.hpp"
#include "mhdwild/tuning.hpp"
#include "mhdwild/wave.hpp"

namespace mhdwild {

int schedule_frequency(long n, const Grid3& g) {
    const double h = std::max(g.hx(), g.hy());
    long cap = static_cast<long>(
        std::floor(1.0 / (tune::kProfileHarmonics * tune::kAliasSamples * h)));
    cap = std::min(cap, static_cast<long>(tune::kFreqMax));
    if (cap < 1) cap = 1;
    const long doublings = n <= 0 ? 0 : (n - 1) / tune::kFreqDoublingPeriod + 1;
    long k = tune::kFreqBase;
    for (long i = 0; i < doublings && k < cap; ++i) k *= 2;
    return static_cast<int>(std::min(k, cap));
}

namespace {

// theta of the positive profile peak; candidate phases are locked so this
// value lands exactly on the scheduled cell center.
double profile_argpeak() {
    static const double th = [] {
        double best = 0.0, bh = -1e300;
        for (int i = 0; i < 8192; ++i) {
            const double t = 2.0 * M_PI * i / 8192.0;
            const double h = profile_h(t);
            if (h > bh) {
                bh = h;
                best = t;
            }
        }
        return best;
    }();
    return th;
}

// Symmetric bump around the scheduled cell center: nominal extent size_cells
// cells per axis, shrunk (never shifted) to stay strictly inside the open
// domain. Half the extent is plateau, where the increment is the exact
// plane wave; the rolloff ring pays the envelope spillover, which scales
// like 1/(rolloff * k) and is what the large entries of the size list are
// buying down.
PlateauBump axis_bump(double c, double lo, double hi, double nominal_half) {
    const double half = std::min(nominal_half, 0.999999 * std::min(c - lo, hi - c));
    return {c - half, c + half, (1.0 - tune::kPlateauFraction) * half};
}

struct Undo {
    std::size_t i;
    SubsolutionState z;
};

struct TrialStats {
    double sum_e = 0.0;       // sum of relaxed-gap changes over touched cells
    double sum_kin = 0.0;     // same for the kinetic density
    double slab0_kin = 0.0;   // kinetic change restricted to slab it = 0
    double sched_e = 0.0;     // gap change at the scheduled cell
    double sched_kin = 0.0;   // kinetic change at the scheduled cell
    double max_excess = 0.0;  // max over touched cells of e_new minus the
                              // engine ceiling (1 - kCeilingMargin) C
};

// Exact largest amplitude keeping one sample admissible for one sign of the
// oscillation. lammax(G + a B + a^2 Q) is convex in a because Q is psd, so
// over a sweep |a| <= A only the endpoints bind. Writing the kinetic part
// kin(a) = kin0 + k1 a + k2 a^2 and the two deviatoric components as
// quadratics, |dev(a)| <= cap - kin(a) squares to a cubic (the quartic
// coefficient cancels: the rank-one Q has |dev Q| = tr Q / 2 exactly).
// Within [0, root of cap - kin] the admissible set is the interval up to the
// first cubic root, found by bisection.
double exact_amplitude_axis(double kin0, double k1, double k2, double d0,
                            double bd, double qd, double o0, double bo,
                            double qo, double cap) {
    const double H0 = cap - kin0;
    if (H0 < 0.0) return 0.0;
    double hi;
    if (k2 > 0.0)
        hi = (-k1 + std::sqrt(k1 * k1 + 4.0 * k2 * H0)) / (2.0 * k2);
    else if (k1 > 0.0)
        hi = H0 / k1;
    else
        hi = 1e12;
    if (!(hi > 0.0)) return 0.0;
    const double c0 = d0 * d0 + o0 * o0 - H0 * H0;
    const double c1 = 2.0 * (d0 * bd + o0 * bo) + 2.0 * H0 * k1;
    const double c2 = bd * bd + bo * bo + 2.0 * (d0 * qd + o0 * qo) -
                      k1 * k1 + 2.0 * H0 * k2;
    const double c3 = 2.0 * (bd * qd + bo * qo) - 2.0 * k1 * k2;
    auto P = [&](double a) { return c0 + a * (c1 + a * (c2 + a * c3)); };
    if (P(0.0) > 0.0) return 0.0;
    if (P(hi) <= 0.0) return hi;
    double lo = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (P(mid) <= 0.0 ? lo : hi) = mid;
    }
    return lo;
}

// Largest |amplitude| keeping every touched sample admissible, exact up to
// bisection. A cheap Weyl bound (lammax <= e + |A| |B|_2 + A^2 |Q|_2)
// screens each sample first; the cubic solve runs only when the bound
// undercuts the running minimum, which keeps the pass near the cost of the
// bound alone. Exactness matters: chords of the momentum circle hold the
// gap at the ceiling identically, and the Weyl bound would truncate them
// to a fraction of their length. Returns -1 as soon as the running minimum
// drops below a_min, so a fit that cannot reach the caller's floor costs
// only a partial scan. The binding cell is reported through blocker: when a
// fit dies on the floor it is almost always one cell already at the ceiling
// in a stress this wave's direction cannot hold there, and the scheduler
// can go repair it.
double fit_amplitude(const SubsolutionField& f, const WavePerturbation& w,
                     double a_min, std::size_t* blocker) {
    const Grid3& g = f.grid;
    const WaveSpan sp = wave_span(g, w);
    WavePerturbation unit = w;
    unit.amplitude = 1.0;
    const double inv = 1.0 / f.rho;
    const double cap =
        f.C * (1.0 - tune::kCeilingMargin + tune::kAdmissibilitySlack);
    double best = 1e300;
    for (int it = sp.t0; it <= sp.t1; ++it)
        for (int ix = sp.x0; ix <= sp.x1; ++ix)
            for (int iy = sp.y0; iy <= sp.y1; ++iy) {
                const SubsolutionState dz =
                    wave_increment(unit, g.tc(it), g.xc(ix), g.yc(iy));
                const double q = (dz.m.x * dz.m.x + dz.m.y * dz.m.y) * inv;
                const SubsolutionState z = f.state(g.index(it, ix, iy));
                const double k1 = (z.m.x * dz.m.x + z.m.y * dz.m.y) * inv;
                const double bd = (z.m.x * dz.m.x - z.m.y * dz.m.y) * inv - dz.U.d;
                const double bo =
                    (z.m.x * dz.m.y + z.m.y * dz.m.x) * inv - dz.U.o;
                const double bn = std::abs(k1) + std::sqrt(bd * bd + bo * bo);
                if (q == 0.0 && bn == 0.0) continue;
                const double kin0 =
                    0.5 * (z.m.x * z.m.x + z.m.y * z.m.y) * inv;
                const double d0 =
                    0.5 * (z.m.x * z.m.x - z.m.y * z.m.y) * inv - z.U.d;
                const double o0 = z.m.x * z.m.y * inv - z.U.o;
                const double head = cap - (kin0 + std::hypot(d0, o0));
                if (head > 0.0) {
                    const double aw =
                        2.0 * head / (bn + std::sqrt(bn * bn + 4.0 * q * head));
                    if (aw >= best) continue;
                }
                const double k2 = 0.5 * q;
                const double qd =
                    0.5 * (dz.m.x * dz.m.x - dz.m.y * dz.m.y) * inv;
                const double qo = dz.m.x * dz.m.y * inv;
                const double a = std::min(
                    exact_amplitude_axis(kin0, k1, k2, d0, bd, qd, o0, bo, qo,
                                         cap),
                    exact_amplitude_axis(kin0, -k1, k2, d0, -bd, qd, o0, -bo,
                                         qo, cap));
                if (a < best) {
                    best = a;
                    if (blocker) *blocker = g.index(it, ix, iy);
                    if (best < a_min) return -1.0;
                }
            }
    return best == 1e300 ? 0.0 : best;
}

TrialStats apply_trial(SubsolutionField& f, std::size_t cell, const WavePerturbation& w,
                       std::vector<Undo>& undo) {
    undo.clear();
    const Grid3& g = f.grid;
    const WaveSpan sp = wave_span(g, w);
    TrialStats st;
    st.max_excess = -1e300;
    const double ecap = f.C * (1.0 - tune::kCeilingMargin);
    for (int it = sp.t0; it <= sp.t1; ++it)
        for (int ix = sp.x0; ix <= sp.x1; ++ix)
            for (int iy = sp.y0; iy <= sp.y1; ++iy) {
                const SubsolutionState dz = wave_increment(w, g.tc(it), g.xc(ix), g.yc(iy));
                if (dz.m.x == 0.0 && dz.m.y == 0.0 && dz.U.d == 0.0 && dz.U.o == 0.0)
                    continue;
                const std::size_t i = g.index(it, ix, iy);
                const SubsolutionState old = f.state(i);
                undo.push_back({i, old});
                const double e0 = relaxed_gap(old, f.rho);
                const double k0 = kinetic_density(old, f.rho);
                f.add(i, dz);
                const SubsolutionState nw = f.state(i);
                const double e1 = relaxed_gap(nw, f.rho);
                const double k1 = kinetic_density(nw, f.rho);
                st.sum_e += e1 - e0;
                st.sum_kin += k1 - k0;
                if (it == 0) st.slab0_kin += k1 - k0;
                if (i == cell) {
                    st.sched_e = e1 - e0;
                    st.sched_kin = k1 - k0;
                }
                if (e1 - ecap > st.max_excess) st.max_excess = e1 - ecap;
            }
    return st;
}

void undo_trial(SubsolutionField& f, const std::vector<Undo>& undo) {
    for (const Undo& u : undo) {
        f.m[u.i] = u.z.m;
        f.U[u.i] = u.z.U;
    }
}

// Worst kinetic-gap cell; exact ties prefer the most interior cell, then the
// lowest linear index. Without the depth key the all-tied zero field would
// schedule boundary cells first, and their clamped sub-cell bumps alias into
// the sampled ci residuals. Cells set aside after a failed sweep are skipped
// until their expiry.
std::size_t worst_kinetic_cell(const SubsolutionField& f, bool slab0_only,
                               const std::unordered_map<std::size_t, long>& blocked,
                               long now) {
    const Grid3& g = f.grid;
    double worst = -1e300;
    int best_depth = -1;
    std::size_t arg = 0;
    const int ntl = slab0_only ? 1 : g.nt;
    for (int it = 0; it < ntl; ++it)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                const std::size_t i = g.index(it, ix, iy);
                if (!blocked.empty()) {
                    const auto bi = blocked.find(i);
                    if (bi != blocked.end() && bi->second > now) continue;
                }
                const double gap = f.C - kinetic_density(f.state(i), f.rho);
                int d = std::min(std::min(ix, g.nx - 1 - ix),
                                 std::min(iy, g.ny - 1 - iy));
                if (!slab0_only) d = std::min(d, std::min(it, g.nt - 1 - it));
                if (gap > worst || (gap == worst && d > best_depth)) {
                    worst = gap;
                    best_depth = d;
                    arg = i;
                }
            }
    return arg;
}

// Special directions carry a seeded jitter so distinct seeds produce
// distinct accepted waves even when the deterministic ladder slot wins.
constexpr double kAlphaJitter = 0.25;

double gap_shear_alpha(const SubsolutionState& z, double rho, DetRng& rng) {
    const Vec2 w = top_eigenvector(gap_matrix(z, rho));
    return std::atan2(w.x, -w.y) + rng.uniform(-kAlphaJitter, kAlphaJitter);
}

}  // namespace

IterateResult iterate(const Grid3& g, double rho, double C, std::uint64_t seed,
                      long max_iter, double target_deficit) {
    IterateResult r{SubsolutionField(g, rho, C, seed), {}, {}};
    SubsolutionField& f = r.field;
    IterationDiagnostics& diag = r.diag;
    DetRng rng(split_seed(seed, 0));

    const double vol = g.cell_volume();
    const double amp_scale = std::sqrt(2.0 * rho * C);
    const std::size_t slab = static_cast<std::size_t>(g.nx) * g.ny;
    constexpr int kSizes = static_cast<int>(std::size(tune::kBumpSizes));
    constexpr int kPerSize = tune::kRetriesPerIteration / kSizes;

    double D = deficit(f);
    diag.initial_deficit = D;
    diag.deficit_history.push_back(D);

    std::vector<Undo> undo;
    std::unordered_map<std::size_t, long> set_aside;
    constexpr std::size_t kNoCell = static_cast<std::size_t>(-1);
    std::size_t last_blocker = kNoCell;

    // Sweep the candidate ladder at one cell until a wave passes the
    // acceptance checks; with contract = false the scheduled-cell pump check
    // is waived (the floor, gain and admissibility always hold).
    auto sweep = [&](std::size_t cell, bool trace, bool contract) -> bool {
        const int iti = static_cast<int>(cell / slab);
        const int ixi = static_cast<int>(cell / g.ny % g.nx);
        const int iyi = static_cast<int>(cell % g.ny);
        const SubsolutionState zs = f.state(cell);
        const double e_sched = relaxed_gap(zs, rho);
        const double bound = tune::kSegmentKappa * (C - e_sched) / amp_scale;

        const int k = schedule_frequency(diag.accepted + diag.trace_accepted, g);
        const double tau_cap =
            1.0 / (tune::kProfileHarmonics * tune::kAliasSamples * k * g.dt());
        const double ts = std::min(0.7 * std::sqrt(2.0 * C / rho), tau_cap);
        const double th_pk = profile_argpeak();
        const double h_pk = profile_h(th_pk);

        for (int trial = 0; trial < tune::kRetriesPerIteration; ++trial) {
            const int size = tune::kBumpSizes[trial / kPerSize];
            const int sub = trial % kPerSize;
            // subs 0..5: kinetic-aimed, shear parallel to m with the time
            // slope chosen to close the deviatoric gap; 6..11: plain shear
            // along the top eigenvector of the gap matrix; rest: random.
            const int slot = sub < 6 ? 0 : (sub < 12 ? 1 : 2);
            double sign = sub % 2 ? -1.0 : 1.0;

            int kc = k;
            double alpha, tau = 0.0;
            if (slot == 0) {
                // chord wave: any line through m meets the momentum circle
                // |m| = M = sqrt(2 rho C) twice, every such chord lies in
                // the flat face e = C of the admissible set, and along it
                // the endpoint-interpolated stress is supplied exactly by
                // the transport tau = (M / rho) cos(delta). The foot angle
                // is scanned for the chord whose on-chord stress is closest
                // to the cell's actual stress, so the oscillation slides
                // the neighborhood along the face instead of piling up
                // unmatched deviatoric stress; the locked peak then parks
                // the scheduled cell near an endpoint, where the kinetic
                // density meets its ceiling.
                const double Mz = std::hypot(zs.m.x, zs.m.y);
                double beta;
                if (Mz > tune::kDegenerateAmplitude * amp_scale)
                    beta = std::atan2(zs.m.y, zs.m.x);
                else
                    beta = rng.uniform(0.0, 2.0 * M_PI);
                const double rad = std::min(1.0, Mz / amp_scale);
                const double jit = rng.uniform(0.0, 1.0);
                double w_foot = 0.0, best_ms = 1e300;
                for (int j = 0; j < tune::kChordScan; ++j) {
                    const double wj =
                        M_PI * ((j + jit) / tune::kChordScan - 0.5);
                    const double cd = rad * std::cos(wj);
                    const double sd = std::sqrt(1.0 - cd * cd);
                    const double sf = beta - wj;
                    const double s =
                        sd > 0.0 ? Mz * std::sin(wj) / (amp_scale * sd) : 0.0;
                    const double c2s = std::cos(2.0 * sf);
                    const double s2s = std::sin(2.0 * sf);
                    const double c2d = 2.0 * cd * cd - 1.0;
                    const double s2d = 2.0 * sd * cd;
                    const double ud = C * (c2d * c2s - s * s2d * s2s);
                    const double uo = C * (c2d * s2s + s * s2d * c2s);
                    const double ms = std::hypot(ud - zs.U.d, uo - zs.U.o);
                    if (ms < best_ms) {
                        best_ms = ms;
                        w_foot = wj;
                    }
                }
                alpha = beta - w_foot + M_PI;
                // push toward the nearer endpoint
                sign = std::sin(w_foot) >= 0.0 ? 1.0 : -1.0;
                if (!trace) {
                    const double cap_c = 1.0 / (tune::kProfileHarmonics *
                                                tune::kAliasSamples * kc * g.dt());
                    tau = std::min(amp_scale * rad * std::cos(w_foot) / rho,
                                   cap_c);
                }
            } else if (slot == 1) {
                alpha = gap_shear_alpha(zs, rho, rng);
                // ride the existing momentum coherently when there is any
                const double md =
                    zs.m.x * std::sin(alpha) - zs.m.y * std::cos(alpha);
                if (std::abs(md) > tune::kDegenerateAmplitude * amp_scale)
                    sign = md > 0.0 ? 1.0 : -1.0;
            } else {
                sign = rng.below(2) ? -1.0 : 1.0;
                alpha = rng.uniform(0.0, 2.0 * M_PI);
                const std::uint64_t pick = rng.below(3);
                const double tsl = trace ? 0.0 : ts;
                tau = pick == 0 ? 0.0 : (pick == 1 ? tsl : -tsl);
            }

            WavePerturbation w;
            w.dir = wave_direction(alpha, tau);
            w.k = kc;
            // aimed slots lock the profile peak onto the scheduled cell
            // center; the random slot also explores phase, which can drop a
            // node onto whichever neighbor binds the amplitude fit
            w.phase0 = slot == 2 ? rng.uniform(0.0, 2.0 * M_PI) : th_pk;
            w.amplitude = 1.0;
            w.bt = axis_bump(g.tc(iti), 0.0, g.T,
                             trace ? 0.5 * g.dt() : 0.5 * size * g.dt());
            w.bx = axis_bump(g.xc(ixi), g.box.x0, g.box.x1, 0.5 * size * g.hx());
            w.by = axis_bump(g.yc(iyi), g.box.y0, g.box.y1, 0.5 * size * g.hy());

            // sub-floor waves deposit envelope spillover without moving the
            // kinetic density, so the floor is never waived; the fit aborts
            // early once it cannot clear it
            const double floor_amp =
                !trace && bound > 0.0 ? tune::kAmplitudeFloor * bound : 0.0;
            std::size_t blk = kNoCell;
            const double a_fit = fit_amplitude(
                f, w, floor_amp / (tune::kAmpFraction * h_pk), &blk);
            if (a_fit < 0.0) {
                ++diag.rejected;
                ++diag.rejected_floor;
                if (blk != kNoCell && blk != cell) last_blocker = blk;
                continue;
            }
            // realized increment at the scheduled cell center
            const double c_real = tune::kAmpFraction * a_fit * h_pk;
            if (!(c_real > 0.0)) {
                ++diag.rejected;
                ++diag.rejected_no_segment;
                continue;
            }
            if (c_real < floor_amp) {
                ++diag.rejected;
                ++diag.rejected_floor;
                continue;
            }
            w.amplitude = sign * tune::kAmpFraction * a_fit;

            const TrialStats st = apply_trial(f, cell, w, undo);
            const double Dn = D - st.sum_e * vol;
            if (st.max_excess > tune::kAdmissibilitySlack * C) {
                undo_trial(f, undo);
                ++diag.rejected;
                ++diag.rejected_overshoot;
                continue;
            }
            // either the deficit strictly drops, or the wave slides cells
            // along the engine ceiling (deficit flat to roundoff) while
            // still strictly growing the kinetic density it is aimed at
            const double tol_e =
                1e-12 * C * static_cast<double>(undo.size());
            const double phase_kin = trace ? st.slab0_kin : st.sum_kin;
            const bool gain = (st.sum_e > 0.0 && Dn < D && phase_kin > 0.0) ||
                              (st.sum_e > -tol_e && phase_kin > tol_e);
            if (!gain) {
                undo_trial(f, undo);
                ++diag.rejected;
                ++diag.rejected_no_gain;
                continue;
            }
            if (contract && !trace && bound > 0.0) {
                const double pump = slot == 0 ? st.sched_kin : st.sched_e;
                if (pump < tune::kPumpVsBound * bound * bound) {
                    undo_trial(f, undo);
                    ++diag.rejected;
                    ++diag.rejected_pump;
                    continue;
                }
            }
            D = std::min(D, Dn);
            diag.deficit_history.push_back(D);
            diag.amplitude_sum += c_real;
            if (kc > diag.max_frequency) diag.max_frequency = kc;
            ++diag.accepted_by_slot[slot];
            ++diag.accepted_by_size[trial / kPerSize];
            if (trace)
                ++diag.trace_accepted;
            else
                ++diag.accepted;
            return true;
        }
        return false;
    };

    // One iteration: schedule the worst kinetic cell (slab 0 only in the
    // trace phase); a cell whose sweep fails is set aside and the cell that
    // throttled its fits is tried next, since repairing the blocker (a slide
    // along its own chord) is what reopens the neighborhood. Falls back to
    // the next-worst cell, and the last cell gets a pump-waived retry.
    // Returns false only when even that finds no admissible improving wave.
    auto one_iteration = [&](bool trace) -> bool {
        const long now = diag.accepted + diag.trace_accepted;
        std::size_t cell = 0;
        std::size_t repair = kNoCell;
        for (int attempt = 0; attempt < tune::kScheduleRetries; ++attempt) {
            if (repair != kNoCell) {
                cell = repair;
                repair = kNoCell;
            } else {
                cell = worst_kinetic_cell(f, trace, set_aside, now);
            }
            last_blocker = kNoCell;
            if (sweep(cell, trace, true)) return true;
            set_aside[cell] = now + tune::kRescheduleWindow;
            if (last_blocker != kNoCell && last_blocker != cell) {
                const auto bi = set_aside.find(last_blocker);
                if (bi == set_aside.end() || bi->second <= now)
                    repair = last_blocker;
            }
        }
        if (set_aside.size() > 4096) {
            for (auto it = set_aside.begin(); it != set_aside.end();)
                it = it->second <= now ? set_aside.erase(it) : std::next(it);
        }
        return sweep(cell, trace, false);
    };

    auto finalize = [&] {
        diag.final_deficit = D;
        diag.final_kinetic_deficit = kinetic_deficit(f);
        diag.final_trace_kinetic_deficit = trace_kinetic_deficit(f);
        f.iterations = diag.accepted + diag.trace_accepted;
        r.m0.assign(f.m.begin(), f.m.begin() + slab);
    };

    // With every state capped at (1 - kCeilingMargin) C the deficit cannot
    // drop below the margin times the space-time volume; a dry sweep near
    // that floor means the construction is finished, not stuck.
    const double deficit_floor = tune::kCeilingMargin * C * g.T *
                                 g.box.width() * g.box.height();

    if (max_iter > 0) {
        while (diag.accepted < max_iter && D > target_deficit) {
            if (!one_iteration(false)) {
                if (D <= 2.0 * deficit_floor) break;
                finalize();
                throw StagnationError(
                    "stagnation: no candidate wave decreased the deficit across a "
                    "full sweep",
                    diag);
            }
        }

        // Trace tail: drive the t -> 0+ slab's kinetic density toward C with
        // waves whose samples live entirely in slab 0. A failed sweep here
        // only stops the tail; trace quality is reported, not fatal.
        long budget = static_cast<long>(
            std::ceil(tune::kTracePhaseFraction * static_cast<double>(max_iter)));
        while (budget > 0) {
            const double mean_gap =
                trace_kinetic_deficit(f) / (g.box.width() * g.box.height());
            if (mean_gap <= tune::kTraceKineticTol * C) break;
            if (!one_iteration(true)) {
                diag.trace_stalled = true;
                break;
            }
            --budget;
        }
    }

    finalize();
    return r;
}

}  // namespace mhdwild
