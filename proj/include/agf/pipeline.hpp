#pragma once

#include "agf/graphbio.hpp"
#include "agf/image.hpp"
#include "agf/pixelgraph.hpp"

#include <cstdint>
#include <string>

namespace agf {

enum class PrefilterKind {
    identity,
    gaussian3x3, // normalized 3x3 binomial kernel, reflect boundary
    external,    // load a pre-filtered patch from <stem>_k<index>.agff (N = 1)
};

enum class FilterMode {
    automatic, // exact when the patch graph is small enough, Chebyshev above
    exact,
    chebyshev,
};

/// Largest node count for which automatic mode picks the dense exact path.
/// Above it the Chebyshev recurrence is used; for polynomial kernels of
/// degree <= cheb_order the two agree to roundoff, so this is purely a
/// speed threshold (a 576-node dense eigendecomposition costs ~80 ms,
/// which dominates a full-image denoise; the recurrence is ~100x cheaper).
inline constexpr int kAutoExactMaxNodes = 256;

/// Full configuration of the analytic denoising block.
struct AgfConfig {
    int patch_size = 24;   // m: patches are m x m
    int cascades = 2;      // tau: number of chained blocks, >= 1
    double epsilon = 0.2;  // kernel bandwidth of edge weights
    int cheb_order = 30;   // Chebyshev order when that path is taken
    double alpha = 0.0;    // highpass attenuation in [0, 1]
    PrefilterKind prefilter = PrefilterKind::identity;
    FeatureKind provider = FeatureKind::intensity_coords;
    FilterMode mode = FilterMode::automatic;
    bool reuse_graph = false; // reuse the diagonal-stage graph for the HV stage
    FilterBank bank;          // defaulted to the cached (6,6) design

    /// Required when provider / prefilter is external: per-patch files are
    /// "<stem>_k<index>.agff" in analysis (patch) index order.
    std::string feature_stem;
    std::string prefilter_stem;

    AgfConfig();

    /// Throws ConfigError on violated invariants (tau >= 1, m >= 2,
    /// alpha in [0, 1], epsilon > 0, cheb_order >= 1, missing stems).
    void validate() const;

    /// The concrete apply path for a patch graph with `nodes` nodes.
    ApplySpec resolve_mode(int nodes) const;
};

/// Additive white Gaussian noise model.
struct NoiseSpec {
    double sigma = 0.0; // standard deviation in intensity units, >= 0
    std::uint64_t seed = 0;
};

/// img + i.i.d. Gaussian(0, sigma^2) noise, generated deterministically
/// from the seed. Values are NOT clipped: clipping is a display concern
/// and metrics use the raw values.
Image add_awgn(const Image& img, const NoiseSpec& spec);

/// Built-in prefilters (identity, gaussian3x3). External prefiltering goes
/// through prefilter_external.
Patch prefilter(const Patch& p, PrefilterKind kind);

/// Replace the patch with one loaded from an N = 1 feature-format file;
/// missing file or a size other than m^2 x 1 raises InputError.
Patch prefilter_external(const Patch& p, const std::string& path);

/// Elementwise max(0, x).
Patch relu(Patch p);

/// Feature map for one patch under cfg.provider; external files are
/// resolved through cfg.feature_stem and the patch index.
FeatureMap patch_features(const Patch& p, const AgfConfig& cfg, int patch_index);

/// One analytic denoising block applied to a single patch:
///   1. features on the current patch -> 8-connected graph -> HV/diagonal
///      bipartite split;
///   2. diagonal stage: prefilter, low-pass filter on the diagonal
///      subgraph, ReLU;
///   3. HV stage: features and graph recomputed from the diagonal stage's
///      output (or reused when cfg.reuse_graph), then prefilter, low-pass
///      filter on the HV subgraph, ReLU.
/// The diagonal stage strictly precedes and feeds the HV stage.
/// `patch_index` selects per-patch external feature/prefilter files; pass
/// 0 when external providers are unused.
Patch agf_block(const Patch& p, const AgfConfig& cfg, int patch_index = 0);

/// Whole-image denoise: partition into patches, run `cascades` blocks per
/// patch with the same configuration for every cascade, reassemble, crop.
/// Patches are independent; `denoise` distributes them across OpenMP
/// threads, `denoise_serial` is the single-threaded reference — the two
/// produce bit-identical output.
Image denoise(const Image& img, const AgfConfig& cfg);
Image denoise_serial(const Image& img, const AgfConfig& cfg);

/// Mean squared error (1/HW) sum (gt - out)^2; dimension mismatch raises
/// InputError.
double mse(const Image& gt, const Image& out);

/// 10 log10(255^2 / mse) in dB; mse = 0 reports +infinity.
double psnr(const Image& gt, const Image& out);

} // namespace agf
