#include "agf/verify.hpp"

#include "agf/bipartite.hpp"
#include "agf/errors.hpp"
#include "agf/glr.hpp"
#include "agf/pipeline.hpp"
#include "agf/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace agf {

namespace {

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

Eigen::VectorXd random_signal(Rng& rng, int n) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.gaussian();
    return x;
}

/// Random connected bipartite graph with up to `max_nodes` nodes, every
/// node of positive degree, weights uniform in (0, 1].
WeightedGraph random_bipartite_graph(Rng& rng, std::vector<int>& coloring, int max_nodes = 64) {
    const int nodes = 2 + rng.uniform_int(max_nodes - 1);
    const int n_a = 1 + rng.uniform_int(nodes - 1);

    coloring.assign(static_cast<std::size_t>(nodes), 1);
    for (int i = 0; i < n_a; ++i) coloring[static_cast<std::size_t>(i)] = 0;
    for (int i = nodes - 1; i > 0; --i)
        std::swap(coloring[static_cast<std::size_t>(i)],
                  coloring[static_cast<std::size_t>(rng.uniform_int(i + 1))]);

    std::vector<int> side_a, side_b;
    for (int i = 0; i < nodes; ++i)
        (coloring[static_cast<std::size_t>(i)] == 0 ? side_a : side_b).push_back(i);

    std::set<std::pair<int, int>> pairs;
    const auto add = [&pairs](int a, int b) { pairs.insert({std::min(a, b), std::max(a, b)}); };
    for (int a : side_a) add(a, side_b[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(side_b.size())))]);
    for (int b : side_b) add(side_a[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(side_a.size())))], b);
    const int extra = rng.uniform_int(2 * nodes + 1);
    for (int e = 0; e < extra; ++e)
        add(side_a[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(side_a.size())))],
            side_b[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(side_b.size())))]);

    WeightedGraph g;
    g.side = 0;
    g.nodes = nodes;
    for (const auto& [i, j] : pairs) g.edges.push_back({i, j, rng.uniform_pos()});
    return g;
}

Patch random_patch(Rng& rng, int m) {
    Patch p(m);
    for (double& v : p.values) v = 255.0 * rng.uniform();
    return p;
}

/// HV or diagonal subgraph of an 8-connected graph over a random patch.
std::pair<WeightedGraph, std::vector<int>> random_patch_subgraph(Rng& rng, int m, bool hv,
                                                                 double epsilon = 0.2) {
    const Patch p = random_patch(rng, m);
    const FeatureMap f = compute_features(p, FeatureKind::intensity_coords);
    const WeightedGraph g = build_8connected_graph(f, m, epsilon);
    BipartitePair split = split_hv_diag(g, m);
    if (hv) return {std::move(split.hv), std::move(split.coloring_hv)};
    return {std::move(split.diag), std::move(split.coloring_diag)};
}

Eigen::VectorXd dense_eigenvalues(const Eigen::SparseMatrix<double>& L) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(L),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("dense eigensolver failed");
    return solver.eigenvalues();
}

SuiteResult suite_filterbank(const FilterBank& bank) {
    SuiteResult res;
    res.name = "filterbank";
    res.threshold = 1e-9;
    const BankReport rep = check_filterbank(bank);
    res.max_residual = std::max({rep.halfband_residual, rep.distortion_residual,
                                 rep.folding_residual, rep.dc_residual, rep.nyquist_residual});
    res.passed = rep.ok(res.threshold);
    res.detail = fmt("halfband=%.3e distortion=%.3e folding=%.3e dc=%.3e nyquist=%.3e",
                     rep.halfband_residual, rep.distortion_residual, rep.folding_residual,
                     rep.dc_residual, rep.nyquist_residual);
    return res;
}

SuiteResult suite_perfect_reconstruction(const FilterBank& bank, Rng& rng, int trials) {
    SuiteResult res;
    res.name = "perfect_reconstruction";
    res.threshold = 1e-8;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<int> coloring;
        const WeightedGraph g = random_bipartite_graph(rng, coloring);
        const WaveletTransform wt(g, coloring, bank, {ApplyKind::exact, 30});
        const Eigen::VectorXd x = random_signal(rng, g.nodes);
        const Eigen::VectorXd back = wt.synthesize(wt.analyze(x));
        worst = std::max(worst, (back - x).norm() / x.norm());
    }
    res.max_residual = worst;
    res.passed = worst <= res.threshold;
    res.detail = fmt("trials=%d max_relative_error=%.3e", trials, worst);
    return res;
}

SuiteResult suite_lowpass_identity(const FilterBank& bank, Rng& rng, int trials) {
    SuiteResult res;
    res.name = "lowpass_identity";
    res.threshold = 1e-8;
    constexpr int kSides[3] = {4, 8, 12};
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto [g, coloring] = random_patch_subgraph(rng, kSides[t % 3], t % 2 == 0);
        const Eigen::VectorXd x = random_signal(rng, g.nodes);
        const Eigen::VectorXd y =
            lowpass_filter(bank, g, coloring, x, 1.0, {ApplyKind::exact, 30});
        worst = std::max(worst, (y - x).norm() / x.norm());
    }
    res.max_residual = worst;
    res.passed = worst <= res.threshold;
    res.detail = fmt("trials=%d max_relative_error=%.3e", trials, worst);
    return res;
}

SuiteResult suite_spectral_folding(Rng& rng, int trials) {
    SuiteResult res;
    res.name = "spectral_folding";
    res.threshold = 1e-8;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<int> coloring;
        const WeightedGraph g = random_bipartite_graph(rng, coloring);
        const FoldReport rep = spectral_fold_check(g, coloring);
        worst = std::max({worst, rep.max_eigenpair_residual, rep.max_pair_sum_gap});
    }

    // Negative control: an odd cycle is not bipartite, so folding must
    // fail visibly there.
    WeightedGraph triangle;
    triangle.nodes = 3;
    triangle.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
    const FoldReport control = spectral_fold_check(triangle, {0, 1, 0});

    res.max_residual = worst;
    res.passed = worst <= res.threshold && control.max_eigenpair_residual > 1e-2;
    res.detail = fmt("trials=%d max_residual=%.3e triangle_control=%.3e", trials, worst,
                     control.max_eigenpair_residual);
    return res;
}

SuiteResult suite_psd_gct(Rng& rng, int trials) {
    SuiteResult res;
    res.name = "psd_gct";
    res.threshold = 0.0;
    constexpr double kEps[3] = {0.1, 0.2, 0.5};
    constexpr double kMu[3] = {0.1, 1.0, 10.0};
    double violation = 0.0;
    double min_eig_seen = 0.0;
    double max_comb_seen = 0.0;
    double max_norm_seen = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int m = 2 + rng.uniform_int(7);
        FeatureMap f(m * m, 3);
        for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = rng.uniform();
        const WeightedGraph g = build_8connected_graph(f, m, kEps[t % 3]);

        for (const LaplacianKind kind : {LaplacianKind::combinatorial, LaplacianKind::normalized}) {
            const Laplacian lap = laplacian(g, kind);
            const Eigen::VectorXd eig = dense_eigenvalues(lap.matrix);
            const double lo = eig.minCoeff();
            const double hi = eig.maxCoeff();
            min_eig_seen = std::min(min_eig_seen, lo);
            violation = std::max(violation, -1e-10 - lo); // PSD within tolerance

            const double bound = gershgorin_bound(lap);
            violation = std::max(violation, hi - bound - 1e-9);

            if (kind == LaplacianKind::combinatorial) {
                max_comb_seen = std::max(max_comb_seen, hi);
                violation = std::max(violation, hi - 16.0 - 1e-9);
                const double mu = kMu[t % 3];
                const double kappa = (1.0 + mu * hi) / (1.0 + mu * lo);
                violation = std::max(violation, kappa - condition_bound(lap, mu) - 1e-9);
            } else {
                max_norm_seen = std::max(max_norm_seen, hi);
                violation = std::max(violation, hi - 2.0 - 1e-10);
            }
        }
    }
    res.max_residual = std::max(0.0, violation);
    res.passed = violation <= 0.0;
    res.detail = fmt("trials=%d min_eig=%.3e max_comb=%.6f max_norm=%.9f", trials, min_eig_seen,
                     max_comb_seen, max_norm_seen);
    return res;
}

SuiteResult suite_chebyshev(const FilterBank& bank, Rng& rng, int trials) {
    SuiteResult res;
    res.name = "chebyshev";
    res.threshold = 1e-3;
    constexpr int kOrders[5] = {8, 16, 30, 32, 64};
    double worst_at[5] = {0, 0, 0, 0, 0};
    bool monotone = true;
    bool stable = true;

    const auto h0_fn = [&bank](double l) { return bank.h0(l); };

    for (int t = 0; t < trials; ++t) {
        const auto [g, coloring] = random_patch_subgraph(rng, 24, t % 2 == 0);
        const Laplacian lap = laplacian(g, LaplacianKind::normalized);
        const SpectralDecomposition dec = eigendecompose(lap.matrix);
        const Eigen::VectorXd x = random_signal(rng, g.nodes);
        const Eigen::VectorXd exact = apply_exact(dec, bank.h0, x);

        double errs[5];
        for (int k = 0; k < 5; ++k) {
            const Eigen::VectorXd approx =
                apply_chebyshev(lap.matrix, h0_fn, kOrders[k], 2.0, x);
            errs[k] = (approx - exact).norm() / exact.norm();
            worst_at[k] = std::max(worst_at[k], errs[k]);
        }
        // Non-increasing over the doubling ladder {8, 16, 32, 64}, with a
        // roundoff floor: once the error hits noise level it may wiggle.
        const auto floored = [&errs](int k) { return std::max(errs[k], 1e-12); };
        if (floored(0) < floored(1) || floored(1) < floored(3) || floored(3) < floored(4))
            monotone = false;

        // Stability: the applied filter's gain cannot exceed the kernel's
        // peak magnitude plus the measured approximation error.
        if (t == 0) {
            double peak = 0.0;
            for (int s = 0; s <= 2000; ++s) peak = std::max(peak, std::abs(bank.h0(2.0 * s / 2000.0)));
            for (int i = 0; i < 100; ++i) {
                Eigen::VectorXd u = random_signal(rng, g.nodes);
                u.normalize();
                const Eigen::VectorXd fu = apply_chebyshev(lap.matrix, h0_fn, 30, 2.0, u);
                const double err = (fu - apply_exact(dec, bank.h0, u)).norm();
                if (fu.norm() > peak + err + 1e-12) stable = false;
            }
        }
    }

    res.max_residual = worst_at[2];
    res.passed = worst_at[2] <= res.threshold && monotone && stable;
    res.detail = fmt("trials=%d err@8=%.3e err@16=%.3e err@30=%.3e err@32=%.3e err@64=%.3e "
                     "monotone=%s stable=%s",
                     trials, worst_at[0], worst_at[1], worst_at[2], worst_at[3], worst_at[4],
                     monotone ? "yes" : "no", stable ? "yes" : "no");
    return res;
}

WeightedGraph random_connected_graph(Rng& rng, int nodes) {
    std::set<std::pair<int, int>> pairs;
    for (int i = 1; i < nodes; ++i) pairs.insert({rng.uniform_int(i), i});
    const int extra = rng.uniform_int(nodes + 1);
    for (int e = 0; e < extra; ++e) {
        const int a = rng.uniform_int(nodes);
        const int b = rng.uniform_int(nodes);
        if (a != b) pairs.insert({std::min(a, b), std::max(a, b)});
    }
    WeightedGraph g;
    g.nodes = nodes;
    for (const auto& [i, j] : pairs) g.edges.push_back({i, j, rng.uniform_pos()});
    return g;
}

SuiteResult suite_cg(Rng& rng, int trials) {
    SuiteResult res;
    res.name = "cg";
    res.threshold = 1e-6;
    constexpr double kMu[3] = {0.1, 1.0, 10.0};

    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int nodes = 2 + rng.uniform_int(99);
        const WeightedGraph g = random_connected_graph(rng, nodes);
        const Laplacian lap = laplacian(g, LaplacianKind::combinatorial);
        const Eigen::VectorXd y = random_signal(rng, nodes);

        GlrConfig cfg;
        cfg.mu = kMu[t % 3];
        cfg.tol = 1e-10;
        const CgResult cg = glr_solve(lap, y, cfg);

        Eigen::MatrixXd system = Eigen::MatrixXd(lap.matrix) * cfg.mu;
        system.diagonal().array() += 1.0;
        const Eigen::VectorXd direct = system.ldlt().solve(y);
        worst = std::max(worst, (cg.x - direct).norm() / direct.norm());
    }

    // Hand-solved fixture: L = [[1,-1],[-1,1]], mu = 1, y = (1,0) gives
    // x = (2/3, 1/3).
    WeightedGraph two;
    two.nodes = 2;
    two.edges = {{0, 1, 1.0}};
    GlrConfig fixture_cfg;
    fixture_cfg.mu = 1.0;
    fixture_cfg.tol = 1e-13;
    const CgResult fixture = glr_solve(laplacian(two, LaplacianKind::combinatorial),
                                       Eigen::Vector2d(1.0, 0.0), fixture_cfg);
    const double fixture_err =
        std::max(std::abs(fixture.x[0] - 2.0 / 3.0), std::abs(fixture.x[1] - 1.0 / 3.0));

    // Iteration counts grow with mu: medians over 50 fixed systems.
    int medians[3];
    {
        std::vector<WeightedGraph> systems;
        std::vector<Eigen::VectorXd> rhs;
        for (int s = 0; s < 50; ++s) {
            systems.push_back(random_connected_graph(rng, 64));
            rhs.push_back(random_signal(rng, 64));
        }
        for (int mi = 0; mi < 3; ++mi) {
            std::vector<int> iteration_counts;
            for (int s = 0; s < 50; ++s) {
                GlrConfig cfg;
                cfg.mu = kMu[mi];
                cfg.tol = 1e-10;
                iteration_counts.push_back(
                    glr_solve(laplacian(systems[static_cast<std::size_t>(s)],
                                        LaplacianKind::combinatorial),
                              rhs[static_cast<std::size_t>(s)], cfg)
                        .iterations);
            }
            std::nth_element(iteration_counts.begin(), iteration_counts.begin() + 25,
                             iteration_counts.end());
            medians[mi] = iteration_counts[25];
        }
    }
    const bool monotone = medians[0] <= medians[1] && medians[1] <= medians[2];

    res.max_residual = worst;
    res.passed = worst <= res.threshold && fixture_err <= 1e-12 && monotone;
    res.detail = fmt("trials=%d max_vs_direct=%.3e fixture=%.3e median_iters=%d/%d/%d", trials,
                     worst, fixture_err, medians[0], medians[1], medians[2]);
    return res;
}

SuiteResult suite_bipartition(Rng& rng) {
    SuiteResult res;
    res.name = "bipartition";
    res.threshold = 0.0;
    int violations = 0;
    for (int m = 2; m <= 32; ++m) {
        const Patch p = random_patch(rng, m);
        const FeatureMap f = compute_features(p, FeatureKind::intensity_coords);
        const WeightedGraph g = build_8connected_graph(f, m, 0.2);
        const BipartitePair split = split_hv_diag(g, m);

        const auto count_hv = static_cast<std::size_t>(2 * m * (m - 1));
        const auto count_diag = static_cast<std::size_t>(2 * (m - 1) * (m - 1));
        if (split.hv.edges.size() != count_hv) ++violations;
        if (split.diag.edges.size() != count_diag) ++violations;
        if (split.hv.edges.size() + split.diag.edges.size() != g.edges.size()) ++violations;

        std::set<std::pair<int, int>> seen;
        std::map<std::pair<int, int>, double> original;
        for (const Edge& e : g.edges) original[{e.i, e.j}] = e.w;
        for (const WeightedGraph* sub : {&split.hv, &split.diag}) {
            for (const Edge& e : sub->edges) {
                if (!seen.insert({e.i, e.j}).second) ++violations; // overlap
                const auto it = original.find({e.i, e.j});
                if (it == original.end() || it->second != e.w) ++violations;
            }
        }
        if (!verify_bipartite(split.hv, split.coloring_hv)) ++violations;
        if (!verify_bipartite(split.diag, split.coloring_diag)) ++violations;
    }
    res.max_residual = violations;
    res.passed = violations == 0;
    res.detail = fmt("sides=2..32 violations=%d", violations);
    return res;
}

} // namespace

std::vector<SuiteResult> run_property_suites(const FilterBank& bank,
                                             const VerifyOptions& options) {
    const int trials = options.trials > 0 ? options.trials : 100;
    const auto stream = [&options](std::uint64_t i) { return mix_seed(options.seed, i); };

    std::vector<SuiteResult> results;
    const auto timed = [&results](SuiteResult r, std::chrono::steady_clock::time_point t0) {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    };

    {
        const auto t0 = std::chrono::steady_clock::now();
        timed(suite_filterbank(bank), t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(stream(1));
        timed(suite_perfect_reconstruction(bank, rng, trials), t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(stream(2));
        timed(suite_lowpass_identity(bank, rng, trials), t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(stream(3));
        timed(suite_spectral_folding(rng, trials), t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(stream(4));
        timed(suite_psd_gct(rng, 10 * trials), t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(stream(5));
        timed(suite_chebyshev(bank, rng, std::max(2, trials / 20)), t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(stream(6));
        timed(suite_cg(rng, 10 * trials), t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(stream(7));
        timed(suite_bipartition(rng), t0);
    }
    return results;
}

std::string format_suite_report(const std::vector<SuiteResult>& results) {
    std::ostringstream os;
    os << fmt("%-24s %-6s %-13s %-11s %s\n", "suite", "status", "max_residual", "threshold",
              "detail");
    int passed = 0;
    for (const SuiteResult& r : results) {
        os << fmt("%-24s %-6s %-13.3e %-11.3e %s\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.max_residual, r.threshold, r.detail.c_str());
        if (r.passed) ++passed;
    }
    os << "passed " << passed << "/" << results.size() << " suites\n";
    return os.str();
}

} // namespace agf
