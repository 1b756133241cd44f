#include "agf/glr.hpp"

#include "agf/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace agf {

void GlrConfig::validate() const {
    if (mu <= 0.0) throw ConfigError("regularization weight mu must be positive");
    if (tol <= 0.0) throw ConfigError("CG tolerance must be positive");
    if (max_iter < 0) throw ConfigError("CG iteration cap must be non-negative");
}

CgResult glr_solve(const Laplacian& L, const Eigen::VectorXd& y, const GlrConfig& cfg) {
    cfg.validate();
    const Eigen::Index n = L.matrix.rows();
    if (y.size() != n) throw InputError("right-hand side length does not match the Laplacian");

    const auto system_multiply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return v + cfg.mu * (L.matrix * v);
    };

    const double norm_y = y.norm();
    if (norm_y == 0.0) return {Eigen::VectorXd::Zero(n), 0, 0.0};

    Eigen::VectorXd jacobi_inv;
    if (cfg.jacobi) {
        jacobi_inv.resize(n);
        const Eigen::VectorXd diag = L.matrix.diagonal();
        for (Eigen::Index i = 0; i < n; ++i) jacobi_inv[i] = 1.0 / (1.0 + cfg.mu * diag[i]);
    }
    const auto precondition = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
        return cfg.jacobi ? jacobi_inv.cwiseProduct(r).eval() : r;
    };

    const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 10 * static_cast<int>(n);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = y; // residual of the zero initial guess
    double rel = r.norm() / norm_y;
    if (rel <= cfg.tol) return {std::move(x), 0, rel};

    Eigen::VectorXd z = precondition(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);

    for (int k = 1; k <= max_iter; ++k) {
        const Eigen::VectorXd Ap = system_multiply(p);
        const double alpha = rz / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        rel = r.norm() / norm_y;
        if (rel <= cfg.tol) return {std::move(x), k, rel};
        z = precondition(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    throw NumericError("CG did not converge within " + std::to_string(max_iter) +
                       " iterations (relative residual " + std::to_string(rel) + ")");
}

double condition_bound(const Laplacian& L, double mu) {
    if (mu < 0.0) throw ConfigError("regularization weight mu must be non-negative");
    return 1.0 + mu * gershgorin_bound(L);
}

namespace {

Image glr_denoise_impl(const Image& img, const GlrConfig& cfg, const AgfConfig& agf_cfg,
                       bool parallel) {
    cfg.validate();
    agf_cfg.validate();
    const std::vector<Patch> patches = partition_into_patches(img, agf_cfg.patch_size);
    std::vector<Patch> done(patches.size());

    const auto run_one = [&](int i) {
        const Patch& p = patches[static_cast<std::size_t>(i)];
        const FeatureMap features = patch_features(p, agf_cfg, i);
        const WeightedGraph g = build_8connected_graph(features, p.m, agf_cfg.epsilon);
        const Laplacian L = laplacian(g, LaplacianKind::combinatorial);
        CgResult solved = glr_solve(L, patch_vector(p), cfg);
        Patch out(p.m, p.origin_row, p.origin_col);
        set_patch_values(out, solved.x);
        done[static_cast<std::size_t>(i)] = std::move(out);
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
#pragma omp critical(agf_glr_error)
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

Image glr_denoise(const Image& img, const GlrConfig& cfg, const AgfConfig& agf_cfg) {
    return glr_denoise_impl(img, cfg, agf_cfg, true);
}

Image glr_denoise_serial(const Image& img, const GlrConfig& cfg, const AgfConfig& agf_cfg) {
    return glr_denoise_impl(img, cfg, agf_cfg, false);
}

} // namespace agf
