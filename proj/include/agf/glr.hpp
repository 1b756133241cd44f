#pragma once

#include "agf/image.hpp"
#include "agf/pipeline.hpp"
#include "agf/pixelgraph.hpp"

#include <Eigen/Core>

namespace agf {

/// Graph-Laplacian-regularized denoising: x* = argmin ||x - y||^2 + mu x^T L x,
/// i.e. the linear system (I + mu L) x* = y.
struct GlrConfig {
    double mu = 10.0;  // regularization weight, > 0
    double tol = 1e-8; // CG relative-residual tolerance
    int max_iter = 0;  // 0 -> 10 * M
    bool jacobi = false; // enable Jacobi (diagonal) preconditioning

    void validate() const; // ConfigError on violation
};

struct CgResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0.0; // final ||y - (I + mu L) x|| / ||y||
};

/// Conjugate-gradient solve of (I + mu L) x = y with sparse matrix-vector
/// products, zero initial guess, and no preconditioner unless cfg.jacobi.
/// Stops when the relative residual drops to cfg.tol; exceeding max_iter
/// raises NumericError carrying the final residual.
CgResult glr_solve(const Laplacian& L, const Eigen::VectorXd& y, const GlrConfig& cfg);

/// 1 + mu * gershgorin_bound(L): an upper bound on the condition number of
/// I + mu L, since its smallest eigenvalue is at least 1.
double condition_bound(const Laplacian& L, double mu);

/// Whole-image GLR denoise: per patch, build features and the 8-connected
/// graph (patch size / provider / epsilon from agf_cfg), take the
/// combinatorial Laplacian, solve, reassemble. `glr_denoise` is
/// patch-parallel via OpenMP; the serial variant is the reference and
/// produces bit-identical output.
Image glr_denoise(const Image& img, const GlrConfig& cfg, const AgfConfig& agf_cfg);
Image glr_denoise_serial(const Image& img, const GlrConfig& cfg, const AgfConfig& agf_cfg);

} // namespace agf
