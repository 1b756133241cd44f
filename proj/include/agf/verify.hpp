#pragma once

#include "agf/graphbio.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace agf {

/// Outcome of one property suite. `max_residual` is the suite's
/// worst-case measured residual (what the pass threshold applies to);
/// `detail` is a deterministic, fixed-format summary line.
struct SuiteResult {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    double threshold = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// Base Monte-Carlo trial count; 0 means the default of 100.
    /// Light suites run `trials` cases, the PSD/GCT and CG sweeps run
    /// 10 * trials.
    int trials = 0;
};

/// Run every property suite against `bank`:
///   filterbank              half-band / distortion / folding identities
///   perfect_reconstruction  synthesize(analyze(x)) = x, random bipartite graphs
///   lowpass_identity        alpha = 1 filter = identity on patch subgraphs
///   spectral_folding        eigenpair mirror about 1 + triangle negative control
///   psd_gct                 Laplacian PSD and Gershgorin bounds vs dense eigensolve
///   chebyshev               approximation error decay, accuracy at order 30, stability
///   cg                      CG vs dense direct solve, fixture, iteration growth in mu
///   bipartition             exact HV/diagonal split counts and 2-colorings
/// Results come back in that order. Given identical (bank, options), the
/// report is byte-identical across runs.
std::vector<SuiteResult> run_property_suites(const FilterBank& bank, const VerifyOptions& options);

/// Fixed-format report table used by the command-line frontend.
std::string format_suite_report(const std::vector<SuiteResult>& results);

} // namespace agf
