#include "agf/graphbio.hpp"

#include "agf/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace agf {

PolynomialKernel::PolynomialKernel(std::vector<double> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw ConfigError("polynomial kernel needs at least one coefficient");
    for (double v : coeffs)
        if (!std::isfinite(v)) throw ConfigError("polynomial kernel coefficient is not finite");
}

double PolynomialKernel::operator()(double lambda) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + *it;
    return acc;
}

PolynomialKernel reflect_kernel(const PolynomialKernel& k) {
    std::vector<double> out(k.coeffs.size(), 0.0);
    std::vector<double> pw{1.0}; // (2 - lambda)^j, built up incrementally
    for (std::size_t j = 0; j < k.coeffs.size(); ++j) {
        for (std::size_t t = 0; t < pw.size(); ++t) out[t] += k.coeffs[j] * pw[t];
        std::vector<double> next(pw.size() + 1, 0.0);
        for (std::size_t t = 0; t < pw.size(); ++t) {
            next[t] += 2.0 * pw[t];
            next[t + 1] -= pw[t];
        }
        pw = std::move(next);
    }
    return PolynomialKernel(std::move(out));
}

PolynomialKernel multiply_kernels(const PolynomialKernel& a, const PolynomialKernel& b) {
    std::vector<double> out(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) out[i + j] += a.coeffs[i] * b.coeffs[j];
    return PolynomialKernel(std::move(out));
}

namespace {

// Exact for the sizes used here (every intermediate stays below 2^53).
double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r *= static_cast<double>(n - k + i);
        r /= static_cast<double>(i);
    }
    return r;
}

// Residual factor of the maximally flat half-band kernel:
//   B(y) = sum_{n=0}^{K-1} C(K-1+n, n) y^n,
// so that p(lambda) = 2^{1-K} (2-lambda)^K B(lambda/2) satisfies
// p(lambda) + p(2-lambda) = 2.
std::vector<double> flat_residual(int K) {
    std::vector<double> b(static_cast<std::size_t>(K));
    for (int n = 0; n < K; ++n) b[static_cast<std::size_t>(n)] = binomial(K - 1 + n, n);
    return b;
}

std::complex<double> eval_poly(const std::vector<double>& c, std::complex<double> y) {
    std::complex<double> acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
    return acc;
}

std::complex<double> eval_poly_derivative(const std::vector<double>& c, std::complex<double> y) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = c.size() - 1; n >= 1; --n)
        acc = acc * y + static_cast<double>(n) * c[n];
    return acc;
}

// Roots via the companion matrix, then Newton-polished against the
// original coefficients (the companion eigenvalues alone are not accurate
// enough for the downstream half-band residual).
std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d < 1) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw DesignError("root finding failed for the half-band residual polynomial");

    std::vector<std::complex<double>> roots(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::complex<double> y = solver.eigenvalues()[i];
        for (int it = 0; it < 30; ++it) {
            const std::complex<double> f = eval_poly(c, y);
            const std::complex<double> df = eval_poly_derivative(c, y);
            if (std::abs(df) == 0.0) break;
            const std::complex<double> step = f / df;
            y -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(y))) break;
        }
        roots[static_cast<std::size_t>(i)] = y;
    }
    return roots;
}

// A factor of the product polynomial that must stay real: either one real
// root or a conjugate pair, stored as real monomial coefficients.
struct RootGroup {
    std::vector<double> factor; // degree 1 or 2, monic
    int size = 0;               // number of roots
};

std::vector<RootGroup> group_conjugate_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> upper;
    std::vector<double> reals;
    for (const auto& r : roots) {
        if (std::abs(r.imag()) <= 1e-9 * (1.0 + std::abs(r)))
            reals.push_back(r.real());
        else if (r.imag() > 0.0)
            upper.push_back(r);
    }
    if (reals.size() + 2 * upper.size() != roots.size())
        throw DesignError("half-band residual roots failed to pair into conjugates");

    // Deterministic ordering so the designed bank is reproducible.
    std::sort(reals.begin(), reals.end());
    std::sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    std::vector<RootGroup> groups;
    for (double r : reals) groups.push_back({{-r, 1.0}, 1});
    for (const auto& r : upper)
        groups.push_back({{std::norm(r), -2.0 * r.real(), 1.0}, 2});
    return groups;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// (2 - lambda)^k times the selected monic root factors.
std::vector<double> expand_half(int zeros_at_two, const std::vector<RootGroup>& groups,
                                const std::vector<bool>& take, bool complement) {
    std::vector<double> poly{1.0};
    for (int i = 0; i < zeros_at_two; ++i) poly = convolve(poly, {2.0, -1.0});
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        if (take[gi] != complement) poly = convolve(poly, groups[gi].factor);
    return poly;
}

double grid_max_abs(const PolynomialKernel& k) {
    double mx = 0.0;
    for (int s = 0; s <= 400; ++s) mx = std::max(mx, std::abs(k(2.0 * s / 400.0)));
    return mx;
}

} // namespace

FilterBank design_filterbank(int degree_lowpass, int degree_highband) {
    const int k1 = degree_lowpass;
    const int k2 = degree_highband;
    if (k1 < 1 || k2 < 1)
        throw DesignError("root multiplicities at lambda = 2 must be at least 1");
    if ((k1 + k2) % 2 != 0)
        throw DesignError("half-band parity requires an even total degree: k1 + k2 = " +
                          std::to_string(k1 + k2) + " is odd");
    const int K = k1 + k2;
    // Beyond K = 12 the expanded monomial coefficients cancel so badly near
    // lambda = 2 that the identity residuals exceed 1e-9.
    if (K > 12)
        throw DesignError("total degree k1 + k2 = " + std::to_string(K) +
                          " exceeds 12; the monomial factorization is no longer stable");

    const std::vector<double> B = flat_residual(K);
    // p(lambda) = c_total * (2-lambda)^K * prod_i (lambda - 2 y_i) where the
    // y_i are the roots of B — substituting lambda/2 doubles each root.
    const double c_total = B.back() * std::pow(2.0, 2 - 2 * K);
    std::vector<std::complex<double>> roots = poly_roots(B);
    for (auto& r : roots) r *= 2.0;
    const auto groups = group_conjugate_roots(roots);

    // h0 takes ceil((K-1)/2) of the K-1 residual roots, g0 the rest; among
    // the splits that respect conjugate pairs, keep the one whose two
    // kernels have the most similar peak magnitude on [0, 2].
    const int want_h0 = (K - 1 + 1) / 2;
    const std::size_t n_groups = groups.size();
    double best_score = std::numeric_limits<double>::infinity();
    FilterBank best;
    bool found = false;

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_groups); ++mask) {
        int taken = 0;
        std::vector<bool> take(n_groups, false);
        for (std::size_t gi = 0; gi < n_groups; ++gi) {
            if (mask & (std::uint64_t{1} << gi)) {
                take[gi] = true;
                taken += groups[gi].size;
            }
        }
        if (taken != want_h0) continue;

        PolynomialKernel h0_raw{expand_half(k1, groups, take, false)};
        PolynomialKernel g0_raw{expand_half(k2, groups, take, true)};
        const double a = std::numbers::sqrt2 / h0_raw(0.0);
        const double b = c_total / a;

        FilterBank bank;
        bank.h0 = h0_raw;
        for (double& v : bank.h0.coeffs) v *= a;
        bank.g0 = g0_raw;
        for (double& v : bank.g0.coeffs) v *= b;
        bank.h1 = reflect_kernel(bank.g0);
        bank.g1 = reflect_kernel(bank.h0);
        bank.zeros_at_two_h0 = k1;
        bank.zeros_at_two_g0 = k2;

        const double score = std::abs(grid_max_abs(bank.h0) - grid_max_abs(bank.g0));
        if (score < best_score) {
            best_score = score;
            best = std::move(bank);
            found = true;
        }
    }

    if (!found)
        throw DesignError("no real factorization splits the residual roots into sizes " +
                          std::to_string(want_h0) + " and " + std::to_string(K - 1 - want_h0));

    const BankReport report = check_filterbank(best);
    if (!report.ok(1e-9)) {
        char msg[256];
        std::snprintf(msg, sizeof msg,
                      "designed bank failed its identity check (halfband %.3e, distortion %.3e, "
                      "folding %.3e, dc %.3e, nyquist %.3e vs tolerance 1e-9)",
                      report.halfband_residual, report.distortion_residual,
                      report.folding_residual, report.dc_residual, report.nyquist_residual);
        throw DesignError(msg);
    }
    return best;
}

const FilterBank& default_filterbank() {
    static const FilterBank bank = design_filterbank(6, 6);
    return bank;
}

bool BankReport::ok(double tol) const {
    return halfband_residual <= tol && distortion_residual <= tol && folding_residual <= tol &&
           dc_residual <= tol && nyquist_residual <= tol;
}

BankReport check_filterbank(const FilterBank& bank, int samples) {
    if (samples < 2) throw ConfigError("check_filterbank needs at least two sample points");
    BankReport rep;
    for (int s = 0; s < samples; ++s) {
        const double l = 2.0 * s / (samples - 1);
        const double r = 2.0 - l;
        // Value products: the expanded product polynomial's monomial
        // coefficients are ill-conditioned near lambda = 2, the factor
        // evaluations are not.
        const double halfband = bank.h0(l) * bank.g0(l) + bank.h0(r) * bank.g0(r) - 2.0;
        const double distortion = bank.h0(l) * bank.g0(l) + bank.h1(l) * bank.g1(l) - 2.0;
        rep.halfband_residual = std::max(rep.halfband_residual, std::abs(halfband));
        rep.distortion_residual = std::max(rep.distortion_residual, std::abs(distortion));
    }

    const PolynomialKernel h1_expected = reflect_kernel(bank.g0);
    const PolynomialKernel g1_expected = reflect_kernel(bank.h0);
    const auto coeff_gap = [](const PolynomialKernel& a, const PolynomialKernel& b) {
        double gap = 0.0;
        const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
        for (std::size_t i = 0; i < n; ++i) {
            const double av = i < a.coeffs.size() ? a.coeffs[i] : 0.0;
            const double bv = i < b.coeffs.size() ? b.coeffs[i] : 0.0;
            gap = std::max(gap, std::abs(av - bv));
        }
        return gap;
    };
    rep.folding_residual =
        std::max(coeff_gap(bank.h1, h1_expected), coeff_gap(bank.g1, g1_expected));

    rep.dc_residual = std::max(std::abs(bank.h0(0.0) - std::numbers::sqrt2),
                               std::abs(bank.g0(0.0) - std::numbers::sqrt2));
    rep.nyquist_residual = std::max(std::abs(bank.h0(2.0)), std::abs(bank.g0(2.0)));
    return rep;
}

void write_coefficients_file(const std::string& path, const FilterBank& bank) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot open coefficients file for writing: " + path);
    const auto line = [&os](const char* name, const PolynomialKernel& k) {
        os << name << ":";
        char buf[32];
        for (double c : k.coeffs) {
            std::snprintf(buf, sizeof buf, "%.17g", c);
            os << ' ' << buf;
        }
        os << '\n';
    };
    line("h0", bank.h0);
    line("h1", bank.h1);
    line("g0", bank.g0);
    line("g1", bank.g1);
    if (!os) throw InputError("failed writing coefficients file: " + path);
}

FilterBank read_coefficients_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open coefficients file: " + path);

    FilterBank bank;
    bool seen[4] = {false, false, false, false};
    std::string lineText;
    while (std::getline(is, lineText)) {
        if (lineText.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(lineText);
        std::string name;
        ls >> name;
        if (name.empty() || name.back() != ':')
            throw InputError("malformed coefficients line (expected \"<kernel>:\"): " + lineText);
        name.pop_back();

        std::vector<double> coeffs;
        double v;
        while (ls >> v) {
            if (!std::isfinite(v)) throw InputError("non-finite coefficient in " + path);
            coeffs.push_back(v);
        }
        if (!ls.eof()) throw InputError("unparsable coefficient in line: " + lineText);
        if (coeffs.empty()) throw InputError("kernel " + name + " has no coefficients: " + path);

        int idx;
        if (name == "h0") idx = 0;
        else if (name == "h1") idx = 1;
        else if (name == "g0") idx = 2;
        else if (name == "g1") idx = 3;
        else throw InputError("unknown kernel name \"" + name + "\" in " + path);
        if (seen[idx]) throw InputError("kernel " + name + " appears twice in " + path);
        seen[idx] = true;
        PolynomialKernel k{std::move(coeffs)};
        (idx == 0 ? bank.h0 : idx == 1 ? bank.h1 : idx == 2 ? bank.g0 : bank.g1) = std::move(k);
    }
    for (int i = 0; i < 4; ++i)
        if (!seen[i]) throw InputError("coefficients file is missing a kernel line: " + path);
    // Root multiplicities at 2 are design metadata and unknown for loaded
    // banks; the identity checks below do not need them.
    return bank;
}

SpectralDecomposition eigendecompose(const Eigen::SparseMatrix<double>& L) {
    if (L.rows() != L.cols()) throw ConfigError("eigendecompose requires a square matrix");
    if (L.rows() > 4096)
        throw ConfigError("eigendecompose is limited to 4096 nodes (got " +
                          std::to_string(L.rows()) + ")");
    const Eigen::MatrixXd dense(L);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success)
        throw NumericError("symmetric eigensolver did not converge for M = " +
                           std::to_string(L.rows()));
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd apply_exact(const SpectralDecomposition& dec, const SpectralFunction& kernel,
                            const Eigen::VectorXd& x) {
    if (x.size() != dec.eigenvalues.size())
        throw InputError("signal length does not match the decomposition");
    Eigen::VectorXd y = dec.eigenvectors.transpose() * x;
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] *= kernel(dec.eigenvalues[i]);
    return dec.eigenvectors * y;
}

Eigen::VectorXd apply_exact(const SpectralDecomposition& dec, const PolynomialKernel& kernel,
                            const Eigen::VectorXd& x) {
    return apply_exact(dec, [&kernel](double l) { return kernel(l); }, x);
}

std::vector<double> chebyshev_coefficients(const SpectralFunction& kernel, int order,
                                           double lambda_hi) {
    if (order < 1) throw ConfigError("Chebyshev order must be at least 1");
    if (lambda_hi <= 0.0) throw ConfigError("Chebyshev interval upper end must be positive");
    const int n = order + 1;
    std::vector<double> fvals(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double theta = std::numbers::pi * (j + 0.5) / n;
        fvals[static_cast<std::size_t>(j)] = kernel(lambda_hi * 0.5 * (std::cos(theta) + 1.0));
    }
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += fvals[static_cast<std::size_t>(j)] *
                   std::cos(k * std::numbers::pi * (j + 0.5) / n);
        c[static_cast<std::size_t>(k)] = 2.0 * acc / n;
    }
    return c;
}

namespace {

// One step of the interval-mapped operator t = (2/lambda_hi) L - I, with
// the spectrum-coverage guard: the Rayleigh quotient of every iterate must
// stay inside [0, lambda_hi] up to roundoff slack.
Eigen::VectorXd mapped_multiply(const Eigen::SparseMatrix<double>& L, double lambda_hi,
                                const Eigen::VectorXd& y) {
    const Eigen::VectorXd Ly = L * y;
    const double yy = y.squaredNorm();
    if (yy > 0.0) {
        const double rayleigh = y.dot(Ly) / yy;
        const double slack = 1e-9 * std::max(1.0, lambda_hi);
        if (rayleigh < -slack || rayleigh > lambda_hi + slack)
            throw NumericError("Chebyshev interval [0, " + std::to_string(lambda_hi) +
                               "] does not cover the spectrum (Rayleigh quotient " +
                               std::to_string(rayleigh) + ")");
    }
    return (2.0 / lambda_hi) * Ly - y;
}

} // namespace

Eigen::VectorXd apply_chebyshev(const Eigen::SparseMatrix<double>& L,
                                const std::vector<double>& cheb, double lambda_hi,
                                const Eigen::VectorXd& x) {
    if (cheb.size() < 2) throw ConfigError("Chebyshev series needs at least order 1");
    if (lambda_hi <= 0.0) throw ConfigError("Chebyshev interval upper end must be positive");
    if (x.size() != L.rows()) throw InputError("signal length does not match the operator");

    Eigen::VectorXd t_prev = x;
    Eigen::VectorXd t_cur = mapped_multiply(L, lambda_hi, x);
    Eigen::VectorXd result = 0.5 * cheb[0] * t_prev + cheb[1] * t_cur;
    for (std::size_t k = 2; k < cheb.size(); ++k) {
        Eigen::VectorXd t_next = 2.0 * mapped_multiply(L, lambda_hi, t_cur) - t_prev;
        result += cheb[k] * t_next;
        t_prev = std::move(t_cur);
        t_cur = std::move(t_next);
    }
    return result;
}

Eigen::VectorXd apply_chebyshev(const Eigen::SparseMatrix<double>& L, const SpectralFunction& kernel,
                                int order, double lambda_hi, const Eigen::VectorXd& x) {
    return apply_chebyshev(L, chebyshev_coefficients(kernel, order, lambda_hi), lambda_hi, x);
}

WaveletTransform::WaveletTransform(const WeightedGraph& g, std::vector<int> coloring,
                                   const FilterBank& bank, ApplySpec spec)
    : coloring_(std::move(coloring)), bank_(bank), spec_(spec) {
    if (!verify_bipartite(g, coloring_))
        throw MalformedGraph("graph is not bipartite under the supplied coloring");
    lap_ = laplacian(g, LaplacianKind::normalized);
    if (spec_.kind == ApplyKind::exact) {
        dec_ = eigendecompose(lap_.matrix);
    } else {
        cheb_.reserve(4);
        for (const PolynomialKernel* k : {&bank_.h0, &bank_.h1, &bank_.g0, &bank_.g1})
            cheb_.push_back(chebyshev_coefficients([k](double l) { return (*k)(l); },
                                                   spec_.cheb_order, 2.0));
    }
}

Eigen::VectorXd WaveletTransform::apply(const PolynomialKernel& k, int which,
                                        const Eigen::VectorXd& x) const {
    if (spec_.kind == ApplyKind::exact) return apply_exact(dec_, k, x);
    return apply_chebyshev(lap_.matrix, cheb_[static_cast<std::size_t>(which)], 2.0, x);
}

WaveletCoeffs WaveletTransform::analyze(const Eigen::VectorXd& x) const {
    const auto n = static_cast<Eigen::Index>(coloring_.size());
    if (x.size() != n) throw InputError("signal length does not match the graph");
    const Eigen::VectorXd low_full = apply(bank_.h0, 0, x);
    const Eigen::VectorXd high_full = apply(bank_.h1, 1, x);
    WaveletCoeffs c{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        if (coloring_[static_cast<std::size_t>(i)] == 0)
            c.low[i] = low_full[i];
        else
            c.high[i] = high_full[i];
    }
    return c;
}

Eigen::VectorXd WaveletTransform::synthesize(const WaveletCoeffs& c) const {
    const auto n = static_cast<Eigen::Index>(coloring_.size());
    if (c.low.size() != n || c.high.size() != n)
        throw InputError("coefficient length does not match the graph");
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool in_a = coloring_[static_cast<std::size_t>(i)] == 0;
        if ((in_a && c.high[i] != 0.0) || (!in_a && c.low[i] != 0.0))
            throw InputError("coefficient layout does not match the partite coloring");
    }
    return apply(bank_.g0, 2, c.low) + apply(bank_.g1, 3, c.high);
}

Eigen::VectorXd WaveletTransform::lowpass(const Eigen::VectorXd& x, double alpha) const {
    if (alpha < 0.0 || alpha > 1.0)
        throw ConfigError("highpass attenuation alpha must lie in [0, 1]");
    WaveletCoeffs c = analyze(x);
    c.high *= alpha;
    return synthesize(c);
}

WaveletCoeffs analyze(const FilterBank& bank, const WeightedGraph& g,
                      const std::vector<int>& coloring, const Eigen::VectorXd& x, ApplySpec spec) {
    return WaveletTransform(g, coloring, bank, spec).analyze(x);
}

Eigen::VectorXd synthesize(const FilterBank& bank, const WeightedGraph& g,
                           const std::vector<int>& coloring, const WaveletCoeffs& coeffs,
                           ApplySpec spec) {
    return WaveletTransform(g, coloring, bank, spec).synthesize(coeffs);
}

Eigen::VectorXd lowpass_filter(const FilterBank& bank, const WeightedGraph& g,
                               const std::vector<int>& coloring, const Eigen::VectorXd& x,
                               double alpha, ApplySpec spec) {
    return WaveletTransform(g, coloring, bank, spec).lowpass(x, alpha);
}

FoldReport spectral_fold_check(const WeightedGraph& g, const std::vector<int>& coloring) {
    if (coloring.size() != static_cast<std::size_t>(g.nodes))
        throw ConfigError("coloring does not cover every node");
    const Laplacian lap = laplacian(g, LaplacianKind::normalized);
    const SpectralDecomposition dec = eigendecompose(lap.matrix);

    Eigen::VectorXd sign(g.nodes);
    for (int i = 0; i < g.nodes; ++i) sign[i] = coloring[static_cast<std::size_t>(i)] == 0 ? 1.0 : -1.0;

    FoldReport rep;
    const Eigen::Index n = dec.eigenvalues.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd mirrored = sign.cwiseProduct(dec.eigenvectors.col(i));
        const double residual =
            (lap.matrix * mirrored - (2.0 - dec.eigenvalues[i]) * mirrored).norm();
        rep.max_eigenpair_residual = std::max(rep.max_eigenpair_residual, residual);
        const double gap = std::abs(dec.eigenvalues[i] + dec.eigenvalues[n - 1 - i] - 2.0);
        rep.max_pair_sum_gap = std::max(rep.max_pair_sum_gap, gap);
    }
    return rep;
}

} // namespace agf
