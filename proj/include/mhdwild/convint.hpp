#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mhdwild/fields.hpp"

namespace mhdwild {

struct IterationDiagnostics {
    // initial deficit, then one entry per accepted wave; non-increasing
    // (flat entries are waves sliding cells along the face e = C while
    // still growing the kinetic density)
    std::vector<double> deficit_history;
    long accepted = 0;           // main-phase accepted waves
    long trace_accepted = 0;     // accepted waves of the trace-enforcement tail
    long rejected = 0;           // discarded trial waves, both phases
    // rejection breakdown: degenerate segment along the candidate direction,
    // relaxed gap pushed past C somewhere, no strict deficit/kinetic gain,
    // realized amplitude under the floor, scheduled-cell pump contract missed
    long rejected_no_segment = 0;
    long rejected_overshoot = 0;
    long rejected_no_gain = 0;
    long rejected_floor = 0;
    long rejected_pump = 0;
    double amplitude_sum = 0.0;  // summed realized amplitudes of accepted waves
    int max_frequency = 0;       // largest frequency k among accepted waves
    long accepted_by_slot[3] = {0, 0, 0};  // kinetic-aimed / shear / explore
    long accepted_by_size[4] = {0, 0, 0, 0};  // per kBumpSizes entry
    bool trace_stalled = false;  // trace tail gave up before its tolerance
    double initial_deficit = 0.0;
    double final_deficit = 0.0;
    double final_kinetic_deficit = 0.0;
    double final_trace_kinetic_deficit = 0.0;
};

// Thrown when the candidate sweeps of a whole scheduling round produce no
// acceptable wave (neither a deficit decrease nor a kinetic face slide).
struct StagnationError : std::runtime_error {
    IterationDiagnostics diag;
    StagnationError(const std::string& msg, IterationDiagnostics d)
        : std::runtime_error(msg), diag(std::move(d)) {}
};

struct IterateResult {
    SubsolutionField field;
    std::vector<Vec2> m0;  // t -> 0+ trace, a copy of the it = 0 slab of field.m
    IterationDiagnostics diag;
};

// Frequency of iteration n: kFreqBase * 2^ceil(n / kFreqDoublingPeriod),
// capped so the top profile harmonic keeps kAliasSamples grid samples per
// period. Never below 1.
int schedule_frequency(long n, const Grid3& g);

// Convex-integration driver. Starts from the zero subsolution on g and adds
// localized waves until the relaxed-gap deficit reaches target_deficit or
// max_iter waves were accepted, then spends up to ceil(kTracePhaseFraction *
// max_iter) further waves confined to the first time slab, pushing the
// t -> 0+ kinetic density toward C. max_iter = 0 returns the zero
// subsolution, deficit C T |Q|. Deterministic per seed.
IterateResult iterate(const Grid3& g, double rho, double C, std::uint64_t seed,
                      long max_iter, double target_deficit);

}  // namespace mhdwild
