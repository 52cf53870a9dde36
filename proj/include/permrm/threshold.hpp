#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/mixed_distribution.hpp"

namespace permrm {

/// BI-AWGN noise level. Under BPSK with all-zero transmission the channel
/// LLR is Gaussian with mean 2/sigma2 and variance 4/sigma2.
struct ChannelNoise {
    double sigma2;

    explicit ChannelNoise(double s2) : sigma2(s2) {
        if (!(s2 > 0.0)) throw std::invalid_argument("ChannelNoise: sigma2 must be > 0");
    }
    double llr_mean() const { return 2.0 / sigma2; }
    double llr_var() const { return 4.0 / sigma2; }
    double llr_sd() const { return std::sqrt(llr_var()); }
};

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

/// Standard normal quantile by bisection on normal_cdf. A few hundred erfc
/// evaluations per call; this is nowhere near a hot path.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
    double lo = -42.0, hi = 42.0;
    for (int iter = 0; iter < 300; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Law of one penalty term min{0, Y}, Y ~ N(llr_mean, llr_var): the normal
/// density on the negatives, discretized to cell-integral masses, plus the
/// exact atom P(Y >= 0) at zero. The sliver (-step/2, 0) folds into the first
/// cell so the atom is never touched by discretization. Cell masses are
/// renormalized so that the continuous part integrates to exactly 1 - atom.
inline MixedDistribution truncated_base(const ChannelNoise& noise, double grid_step = 0.005,
                                        double grid_span = 0.0) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("truncated_base: grid_step must be > 0");
    double mu = noise.llr_mean();
    double sd = noise.llr_sd();
    if (grid_span == 0.0) grid_span = std::max(12.0 * sd, mu + 13.0 * sd);
    if (grid_span < 12.0 * sd)
        throw std::invalid_argument(
            "truncated_base: grid_span must cover at least 12 standard deviations below 0");

    std::size_t cells = static_cast<std::size_t>(std::ceil(grid_span / grid_step));
    MixedDistribution d;
    d.step = grid_step;
    d.mass_at_zero = normal_cdf(mu / sd);
    d.grid_start = -(static_cast<double>(cells) + 0.5) * grid_step;
    d.density.resize(cells);

    auto cdf = [&](double x) { return normal_cdf((x - mu) / sd); };
    double upper = cdf(0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        double lower = cdf(-(static_cast<double>(i) + 1.5) * grid_step);
        d.density[i] = upper - lower;
        total += d.density[i];
        upper = lower;
    }
    double continuous = 1.0 - d.mass_at_zero;
    double scale = (total > 0.0) ? continuous / total : 0.0;
    for (auto& v : d.density) v *= scale / grid_step;  // store densities, not masses
    return d;
}

struct TruncatedMoments {
    double mean;
    double variance;
};

/// Closed-form mean and variance of min{0, Y}: with a = -mu/sd,
/// E[X] = mu Phi(a) - sd phi(a) and E[X^2] = (mu^2 + sd^2) Phi(a) - sd mu phi(a).
inline TruncatedMoments truncated_moments(const ChannelNoise& noise) {
    double mu = noise.llr_mean();
    double sd = noise.llr_sd();
    double a = -mu / sd;
    double cdf = normal_cdf(a);
    double pdf = 0.39894228040143267794 * std::exp(-0.5 * a * a);
    double mean = mu * cdf - sd * pdf;
    double second = (mu * mu + sd * sd) * cdf - sd * mu * pdf;
    return {mean, second - mean * mean};
}

/// Gaussian approximation of the n-term penalty sum: the p-quantile of
/// N(n mean, n variance).
inline double clt_threshold(int n, const ChannelNoise& noise, double p) {
    if (n < 1) throw std::invalid_argument("clt_threshold: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("clt_threshold: p must lie in (0,1)");
    TruncatedMoments m = truncated_moments(noise);
    double dn = static_cast<double>(n);
    return dn * m.mean + normal_quantile(p) * std::sqrt(dn * m.variance);
}

struct ThresholdResult {
    double value = 0.0;
    bool at_point_mass = false;  // the quantile landed in the atom at zero
};

/// p-quantile of the n-fold convolution of the truncated base with itself,
/// built by repeated squaring (binary decomposition of n) so only O(log n)
/// convolutions are needed. The support is capped at n*(mean - 12 sd) of the
/// single-term law; mass beyond that cannot influence any quantile above it.
/// Returns the smallest grid point z with F(z) >= p by linear interpolation
/// between bracketing lattice CDF values; a p larger than the continuous mass
/// means the quantile sits at the atom and value 0 is returned with the flag.
inline ThresholdResult precise_threshold_ex(int n, const ChannelNoise& noise, double p,
                                            double grid_step = 0.005) {
    if (n < 1) throw std::invalid_argument("precise_threshold: n must be >= 1");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("precise_threshold: p must lie in (0,1)");

    TruncatedMoments mom = truncated_moments(noise);
    double support = static_cast<double>(n) *
                     (std::fabs(mom.mean) + 12.0 * std::sqrt(mom.variance));
    std::size_t max_cells = static_cast<std::size_t>(std::ceil(support / grid_step)) + 1;

    MixedDistribution acc = MixedDistribution::unit(grid_step);
    MixedDistribution sq = truncated_base(noise, grid_step);
    bool acc_is_unit = true;
    for (int bits = n; bits > 0; bits >>= 1) {
        if (bits & 1) {
            acc = acc_is_unit ? sq : convolve(acc, sq, max_cells);
            acc_is_unit = false;
        }
        if (bits > 1) sq = convolve(sq, sq, max_cells);
    }

    std::vector<double> cdf = acc.lattice_cdf();  // cdf[i] = F(x_i), decreasing in i
    ThresholdResult res;
    if (cdf.empty() || p > cdf[0]) {
        res.value = 0.0;
        res.at_point_mass = true;
        return res;
    }
    // walk up from the far tail until the lattice CDF reaches p
    std::size_t i = cdf.size();
    while (i > 0 && cdf[i - 1] < p) --i;
    if (i == cdf.size()) {
        // p at or below the lowest lattice point: interpolate from the support edge
        res.value = acc.grid_start +
                    (acc.position(i - 1) - acc.grid_start) * (p / cdf[i - 1]);
    } else {
        // bracket: cdf[i-1] >= p > cdf[i]
        double f_lo = cdf[i], f_hi = cdf[i - 1];
        res.value = (f_hi > f_lo)
                        ? acc.position(i) + grid_step * (p - f_lo) / (f_hi - f_lo)
                        : acc.position(i - 1);
    }
    return res;
}

inline double precise_threshold(int n, const ChannelNoise& noise, double p,
                                double grid_step = 0.005) {
    return precise_threshold_ex(n, noise, p, grid_step).value;
}

} // namespace permrm
