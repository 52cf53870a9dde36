#pragma once

// Independent reference implementations used by the tests: deliberately slow,
// straight-line versions of encoding, quadrature, and sampling that the fast
// library code is checked against.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "permrm/rm_code.hpp"
#include "permrm/rng.hpp"
#include "permrm/types.hpp"

namespace testutil {

/// O(n^2) GF(2) encoder straight from the generator matrix rows.
inline permrm::BitVector matrix_encode(const permrm::CodeSpec& spec, const permrm::BitVector& u0) {
    auto a = permrm::generator_matrix(spec.m);
    std::size_t n = a.size();
    permrm::BitVector c(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (u0[i])
            for (std::size_t j = 0; j < n; ++j) c[j] ^= a[i][j];
    return c;
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double both = left + right;
    if (depth <= 0 || std::fabs(both - whole) < 15.0 * tol) return both + (both - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// One draw of min{0, Y} with Y ~ N(mu, sd^2).
inline double sample_penalty(double mu, double sd, permrm::Rng& rng) {
    double y = mu + sd * rng.gaussian();
    return y < 0.0 ? y : 0.0;
}

/// Every codeword of a small code (k <= 20), for exhaustive checks.
inline std::vector<permrm::BitVector> all_codewords(const permrm::CodeSpec& spec) {
    int k = spec.dimension();
    std::vector<permrm::BitVector> words;
    words.reserve(std::size_t{1} << k);
    permrm::BitVector info(static_cast<std::size_t>(k), 0);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
        for (int i = 0; i < k; ++i) info[static_cast<std::size_t>(i)] = (v >> i) & 1;
        words.push_back(permrm::encode(spec, permrm::scatter_info(spec, info)));
    }
    return words;
}

inline permrm::LlrVector random_llrs(std::size_t n, permrm::Rng& rng, double lo = -10.0,
                                     double hi = 10.0) {
    permrm::LlrVector y(n);
    for (auto& v : y) v = rng.uniform(lo, hi);
    return y;
}

inline permrm::BitVector random_codeword(const permrm::CodeSpec& spec, permrm::Rng& rng) {
    permrm::BitVector info(static_cast<std::size_t>(spec.dimension()));
    for (auto& b : info) b = rng.bit();
    return permrm::encode(spec, permrm::scatter_info(spec, info));
}

struct Interval {
    double lo;
    double hi;
};

/// 95% Wilson score interval for a binomial proportion.
inline Interval wilson95(std::uint64_t errors, std::uint64_t trials) {
    double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double p = static_cast<double>(errors) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

} // namespace testutil
