#pragma once

#include "agf/bipartite.hpp"
#include "agf/pixelgraph.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <string>
#include <vector>

namespace agf {

/// Real polynomial in the graph frequency lambda, monomial basis,
/// coefficients stored lowest degree first (never empty).
struct PolynomialKernel {
    std::vector<double> coeffs;

    PolynomialKernel() : coeffs{0.0} {}
    explicit PolynomialKernel(std::vector<double> c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator()(double lambda) const; // Horner evaluation
};

/// k(2 - lambda) expanded back into the monomial basis.
PolynomialKernel reflect_kernel(const PolynomialKernel& k);

/// Polynomial product.
PolynomialKernel multiply_kernels(const PolynomialKernel& a, const PolynomialKernel& b);

/// Two-channel biorthogonal filterbank on [0, 2]: analysis low/high h0/h1,
/// synthesis low/high g0/g1. Valid banks satisfy, as identities,
///   h1(lambda) = g0(2 - lambda),   g1(lambda) = h0(2 - lambda),
///   p(lambda) + p(2 - lambda) = 2  with  p = h0 * g0  (half-band),
/// which together give perfect reconstruction on bipartite graphs.
/// Immutable after design; shareable across threads.
struct FilterBank {
    PolynomialKernel h0, h1, g0, g1;
    // Design metadata: root multiplicities at lambda = 2 (0 when the bank
    // was loaded from a coefficients file, which does not record them).
    int zeros_at_two_h0 = 0;
    int zeros_at_two_g0 = 0;
};

/// Build the maximally flat half-band bank with the given root
/// multiplicities at lambda = 2 for h0 and g0. The total k1 + k2 must be
/// even (half-band parity) and both at least 1; violations and infeasible
/// factorizations raise DesignError naming the constraint. The returned
/// bank is normalized to h0(0) = g0(0) = sqrt(2) and already validated.
FilterBank design_filterbank(int degree_lowpass, int degree_highband);

/// The (6,6) design, built once and cached.
const FilterBank& default_filterbank();

/// Residuals of the FilterBank identities. The half-band and distortion
/// residuals are measured through value products of the factor kernels
/// (never through the expanded degree-2K product polynomial, whose
/// monomial coefficients are too ill-conditioned near lambda = 2);
/// the folding residuals compare expanded coefficients directly.
struct BankReport {
    double halfband_residual = 0;   // max |h0*g0(l) + h0*g0(2-l) - 2| over samples
    double distortion_residual = 0; // max |h0(l)g0(l) + h1(l)g1(l) - 2| over samples
    double folding_residual = 0;    // max coefficient gap of h1 vs g0(2-.), g1 vs h0(2-.)
    double dc_residual = 0;         // max(|h0(0) - sqrt 2|, |g0(0) - sqrt 2|)
    double nyquist_residual = 0;    // max(|h0(2)|, |g0(2)|)

    bool ok(double tol = 1e-9) const;
};

BankReport check_filterbank(const FilterBank& bank, int samples = 201);

/// --- coefficients file ----------------------------------------------------
/// Plain text, one kernel per line: the name ("h0:", "h1:", "g0:", "g1:")
/// followed by space-separated monomial coefficients, lowest degree first.

void write_coefficients_file(const std::string& path, const FilterBank& bank);
FilterBank read_coefficients_file(const std::string& path); // InputError on malformed

/// --- spectral application ---------------------------------------------------

/// Dense symmetric eigendecomposition L = V diag(lambda) V^T with
/// eigenvalues ascending and V orthonormal. Intended for moderate sizes;
/// M > 4096 is a ConfigError, eigensolver failure a NumericError.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

SpectralDecomposition eigendecompose(const Eigen::SparseMatrix<double>& L);

using SpectralFunction = std::function<double(double)>;

/// V diag(kernel(lambda_i)) V^T x — exact spectral filtering.
Eigen::VectorXd apply_exact(const SpectralDecomposition& dec, const SpectralFunction& kernel,
                            const Eigen::VectorXd& x);
Eigen::VectorXd apply_exact(const SpectralDecomposition& dec, const PolynomialKernel& kernel,
                            const Eigen::VectorXd& x);

/// Chebyshev interpolation coefficients of `kernel` on [0, lambda_hi] at
/// order + 1 Chebyshev nodes; exact (to roundoff) for polynomials of
/// degree <= order. Returned c_k follow the convention
///   kernel(l) ~= c_0/2 + sum_{k>=1} c_k T_k(2 l / lambda_hi - 1).
std::vector<double> chebyshev_coefficients(const SpectralFunction& kernel, int order,
                                           double lambda_hi);

/// Apply the Chebyshev series through the three-term recurrence on the
/// interval-mapped operator 2 L / lambda_hi - I; cost O(order * nnz(L)).
/// An iterate whose Rayleigh quotient leaves [0, lambda_hi] (beyond
/// roundoff slack) raises NumericError: the interval did not cover the
/// spectrum.
Eigen::VectorXd apply_chebyshev(const Eigen::SparseMatrix<double>& L,
                                const std::vector<double>& cheb, double lambda_hi,
                                const Eigen::VectorXd& x);
Eigen::VectorXd apply_chebyshev(const Eigen::SparseMatrix<double>& L, const SpectralFunction& kernel,
                                int order, double lambda_hi, const Eigen::VectorXd& x);

enum class ApplyKind {
    exact,     // dense eigendecomposition
    chebyshev, // polynomial recurrence
};

struct ApplySpec {
    ApplyKind kind = ApplyKind::exact;
    int cheb_order = 30;
};

/// Critically sampled two-channel coefficients. Both vectors are full
/// length M; `low` is supported on partite A (color 0) and `high` on
/// partite B (color 1), so the joint support has exactly M entries.
struct WaveletCoeffs {
    Eigen::VectorXd low;
    Eigen::VectorXd high;
};

/// Two-channel wavelet transform bound to one bipartite graph. Uses the
/// normalized Laplacian (spectrum in [0, 2], where spectral folding
/// holds). Construction precomputes the eigendecomposition (exact mode)
/// or the kernels' Chebyshev coefficients; all methods are const and
/// thread-compatible. Non-bipartite input raises MalformedGraph.
class WaveletTransform {
public:
    WaveletTransform(const WeightedGraph& g, std::vector<int> coloring, const FilterBank& bank,
                     ApplySpec spec);

    /// y_low = h0(Ln) x restricted to A; y_high = h1(Ln) x restricted to B.
    WaveletCoeffs analyze(const Eigen::VectorXd& x) const;

    /// g0(Ln) y_low + g1(Ln) y_high; inverse of analyze for valid banks.
    Eigen::VectorXd synthesize(const WaveletCoeffs& c) const;

    /// synthesize(analyze(x)) with the high band scaled by alpha in
    /// [0, 1]: alpha = 0 keeps the low-pass branch only, alpha = 1 is the
    /// identity (perfect reconstruction). Out-of-range alpha raises
    /// ConfigError.
    Eigen::VectorXd lowpass(const Eigen::VectorXd& x, double alpha) const;

    const Laplacian& normalized_laplacian() const { return lap_; }
    const std::vector<int>& coloring() const { return coloring_; }

private:
    Eigen::VectorXd apply(const PolynomialKernel& k, int which, const Eigen::VectorXd& x) const;

    std::vector<int> coloring_;
    FilterBank bank_;
    ApplySpec spec_;
    Laplacian lap_;
    SpectralDecomposition dec_;                  // exact mode only
    std::vector<std::vector<double>> cheb_;      // chebyshev mode: h0, h1, g0, g1
};

/// One-shot conveniences over WaveletTransform.
WaveletCoeffs analyze(const FilterBank& bank, const WeightedGraph& g,
                      const std::vector<int>& coloring, const Eigen::VectorXd& x, ApplySpec spec);
Eigen::VectorXd synthesize(const FilterBank& bank, const WeightedGraph& g,
                           const std::vector<int>& coloring, const WaveletCoeffs& coeffs,
                           ApplySpec spec);
Eigen::VectorXd lowpass_filter(const FilterBank& bank, const WeightedGraph& g,
                               const std::vector<int>& coloring, const Eigen::VectorXd& x,
                               double alpha, ApplySpec spec);

/// Spectral folding diagnostic: on a bipartite graph the normalized
/// Laplacian's eigenpairs mirror about lambda = 1 — (lambda, v) pairs with
/// (2 - lambda, Jv), J negating partite B. Reports the worst eigenpair
/// residual ||Ln (Jv) - (2 - lambda) Jv||_2 and the worst sorted-spectrum
/// pairing gap |lambda_i + lambda_{M-1-i} - 2|. Large residuals flag
/// non-bipartite graphs (report-only, never throws on asymmetry).
struct FoldReport {
    double max_eigenpair_residual = 0;
    double max_pair_sum_gap = 0;
};

FoldReport spectral_fold_check(const WeightedGraph& g, const std::vector<int>& coloring);

} // namespace agf
