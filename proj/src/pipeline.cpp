#include "agf/pipeline.hpp"

#include "agf/bipartite.hpp"
#include "agf/errors.hpp"
#include "agf/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <utility>

namespace agf {

AgfConfig::AgfConfig() : bank(default_filterbank()) {}

void AgfConfig::validate() const {
    if (patch_size < 2) throw ConfigError("patch size must be at least 2");
    if (cascades < 1) throw ConfigError("cascade count must be at least 1");
    if (epsilon <= 0.0) throw ConfigError("kernel bandwidth epsilon must be positive");
    if (cheb_order < 1) throw ConfigError("Chebyshev order must be at least 1");
    if (alpha < 0.0 || alpha > 1.0)
        throw ConfigError("highpass attenuation alpha must lie in [0, 1]");
    if (provider == FeatureKind::external && feature_stem.empty())
        throw ConfigError("external feature provider requires a file stem");
    if (prefilter == PrefilterKind::external && prefilter_stem.empty())
        throw ConfigError("external prefilter requires a file stem");
}

ApplySpec AgfConfig::resolve_mode(int nodes) const {
    ApplySpec spec;
    spec.cheb_order = cheb_order;
    switch (mode) {
    case FilterMode::exact: spec.kind = ApplyKind::exact; break;
    case FilterMode::chebyshev: spec.kind = ApplyKind::chebyshev; break;
    case FilterMode::automatic:
        spec.kind = nodes <= kAutoExactMaxNodes ? ApplyKind::exact : ApplyKind::chebyshev;
        break;
    }
    return spec;
}

Image add_awgn(const Image& img, const NoiseSpec& spec) {
    if (spec.sigma < 0.0) throw ConfigError("noise standard deviation must be non-negative");
    Image out = img;
    if (spec.sigma > 0.0) {
        Rng rng(spec.seed);
        for (double& v : out.values) v += spec.sigma * rng.gaussian();
    }
    return out;
}

Patch prefilter(const Patch& p, PrefilterKind kind) {
    switch (kind) {
    case PrefilterKind::identity: return p;
    case PrefilterKind::gaussian3x3: {
        // Normalized binomial kernel [1 2 1; 2 4 2; 1 2 1] / 16 with
        // reflected boundaries.
        constexpr double kTap[3] = {1.0, 2.0, 1.0};
        Patch out(p.m, p.origin_row, p.origin_col);
        for (int r = 0; r < p.m; ++r) {
            for (int c = 0; c < p.m; ++c) {
                double acc = 0.0;
                for (int dr = -1; dr <= 1; ++dr) {
                    const int rr = reflect_index(r + dr, p.m);
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int cc = reflect_index(c + dc, p.m);
                        acc += kTap[dr + 1] * kTap[dc + 1] * p.at(rr, cc);
                    }
                }
                out.at(r, c) = acc / 16.0;
            }
        }
        return out;
    }
    case PrefilterKind::external:
        throw ConfigError("external prefilter needs a file path; use prefilter_external");
    }
    throw ConfigError("unknown prefilter kind");
}

Patch prefilter_external(const Patch& p, const std::string& path) {
    const FeatureMap fm = read_feature_file(path);
    if (fm.rows() != p.nodes() || fm.cols() != 1)
        throw InputError("external prefilter file " + path + " is not " +
                         std::to_string(p.nodes()) + "x1");
    Patch out(p.m, p.origin_row, p.origin_col);
    for (int i = 0; i < p.nodes(); ++i) out.values[static_cast<std::size_t>(i)] = fm(i, 0);
    return out;
}

Patch relu(Patch p) {
    for (double& v : p.values) v = std::max(0.0, v);
    return p;
}

FeatureMap patch_features(const Patch& p, const AgfConfig& cfg, int patch_index) {
    if (cfg.provider == FeatureKind::external) {
        FeatureMap fm = read_feature_file(feature_file_path(cfg.feature_stem, patch_index));
        if (fm.rows() != p.nodes())
            throw InputError("external feature file for patch " + std::to_string(patch_index) +
                             " has " + std::to_string(fm.rows()) + " rows, expected " +
                             std::to_string(p.nodes()));
        return fm;
    }
    return compute_features(p, cfg.provider);
}

namespace {

Patch apply_prefilter(const Patch& p, const AgfConfig& cfg, int patch_index) {
    if (cfg.prefilter == PrefilterKind::external)
        return prefilter_external(p, feature_file_path(cfg.prefilter_stem, patch_index));
    return prefilter(p, cfg.prefilter);
}

Patch filter_stage(const Patch& p, const WeightedGraph& g, const std::vector<int>& coloring,
                   const AgfConfig& cfg, ApplySpec spec, int patch_index) {
    const Patch pre = apply_prefilter(p, cfg, patch_index);
    const Eigen::VectorXd filtered =
        lowpass_filter(cfg.bank, g, coloring, patch_vector(pre), cfg.alpha, spec);
    Patch out(p.m, p.origin_row, p.origin_col);
    set_patch_values(out, filtered);
    return relu(std::move(out));
}

} // namespace

Patch agf_block(const Patch& p, const AgfConfig& cfg, int patch_index) {
    cfg.validate();
    const ApplySpec spec = cfg.resolve_mode(p.nodes());

    const FeatureMap f_diag = patch_features(p, cfg, patch_index);
    const WeightedGraph g_diag = build_8connected_graph(f_diag, p.m, cfg.epsilon);
    const BipartitePair split_diag = split_hv_diag(g_diag, p.m);

    // Diagonal stage first; its output feeds the HV stage.
    const Patch x_diag =
        filter_stage(p, split_diag.diag, split_diag.coloring_diag, cfg, spec, patch_index);

    if (cfg.reuse_graph)
        return filter_stage(x_diag, split_diag.hv, split_diag.coloring_hv, cfg, spec, patch_index);

    // Default: rebuild features and graph from the diagonal stage's output.
    const FeatureMap f_hv = patch_features(x_diag, cfg, patch_index);
    const WeightedGraph g_hv = build_8connected_graph(f_hv, p.m, cfg.epsilon);
    const BipartitePair split_hv = split_hv_diag(g_hv, p.m);
    return filter_stage(x_diag, split_hv.hv, split_hv.coloring_hv, cfg, spec, patch_index);
}

namespace {

Image denoise_impl(const Image& img, const AgfConfig& cfg, bool parallel) {
    cfg.validate();
    const std::vector<Patch> patches = partition_into_patches(img, cfg.patch_size);
    std::vector<Patch> done(patches.size());

    const auto run_one = [&](int i) {
        Patch q = patches[static_cast<std::size_t>(i)];
        for (int t = 0; t < cfg.cascades; ++t) q = agf_block(q, cfg, i);
        done[static_cast<std::size_t>(i)] = std::move(q);
    };

    const int n = static_cast<int>(patches.size());
    if (parallel) {
        std::exception_ptr error;
        std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                run_one(i);
            } catch (...) {
#pragma omp critical(agf_denoise_error)
                {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (int i = 0; i < n; ++i) run_one(i);
    }
    return reassemble_patches(done, img.height, img.width);
}

} // namespace

Image denoise(const Image& img, const AgfConfig& cfg) { return denoise_impl(img, cfg, true); }

Image denoise_serial(const Image& img, const AgfConfig& cfg) {
    return denoise_impl(img, cfg, false);
}

double mse(const Image& gt, const Image& out) {
    if (gt.height != out.height || gt.width != out.width)
        throw InputError("image dimensions differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < gt.values.size(); ++i) {
        const double d = gt.values[i] - out.values[i];
        acc += d * d;
    }
    return acc / static_cast<double>(gt.values.size());
}

double psnr(const Image& gt, const Image& out) {
    const double err = mse(gt, out);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / err);
}

} // namespace agf
