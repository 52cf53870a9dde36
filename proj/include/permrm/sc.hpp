#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/rm_code.hpp"
#include "permrm/types.hpp"

namespace permrm {

/// Exact check-node kernel ln((e^{x+y}+1)/(e^x+e^y)), rewritten as
///   sign(x)sign(y)min(|x|,|y|) + log1p(e^{-|x+y|}) - log1p(e^{-|x-y|})
/// which never overflows for |x|,|y| <= 700. Provided for testing and the
/// optional high-accuracy mode; the decoders below use the min-sum form.
inline double f_minus_exact(double x, double y) {
    double s = std::fabs(x + y);
    double d = std::fabs(x - y);
    return 0.5 * (s - d) + std::log1p(std::exp(-s)) - std::log1p(std::exp(-d));
}

/// Min-sum check-node kernel, sign(0) treated as +1.
inline double f_minus_minsum(double x, double y) {
    double a = std::fabs(x);
    double b = std::fabs(y);
    double mag = a < b ? a : b;
    return ((x < 0.0) != (y < 0.0)) ? -mag : mag;
}

/// Variable-node kernel (1-2u)x + y.
inline double f_plus(double x, double y, std::uint8_t u) {
    return u ? y - x : y + x;
}

struct OpCounters {
    std::uint64_t fplus = 0;
    std::uint64_t fminus = 0;

    bool operator==(const OpCounters&) const = default;
};

constexpr double kAbortedMetric = -std::numeric_limits<double>::infinity();
constexpr double kNoThreshold = -std::numeric_limits<double>::infinity();

struct DecodeOutcome {
    BitVector codeword;   // layer-l bits of the decoded subtree
    BitVector layer0;     // full layer-0 vector (leaves outside the subtree untouched)
    double metric = 0.0;  // sum of min{0,.} penalties; -inf when aborted
    OpCounters ops;
    bool aborted = false;
};

namespace detail {

/// Scratch for one in-flight SC recursion over a length-n code: per-level LLR
/// and bit buffers laid out as flat arrays (level l occupies [2^l - 1, 2^(l+1) - 1)).
/// Reusing a workspace across calls keeps the per-branch cost allocation-free.
struct ScWorkspace {
    std::vector<double> llrs;       // child-LLR buffers, size n - 1
    std::vector<std::uint8_t> bits; // left-child bit buffers, size n - 1

    void ensure(int n) {
        if (static_cast<int>(llrs.size()) < n - 1) {
            llrs.assign(static_cast<std::size_t>(n - 1), 0.0);
            bits.assign(static_cast<std::size_t>(n - 1), 0);
        }
    }
};

/// One node of the decode recursion over the factor-graph tree. `y` holds 2^l
/// input LLRs, `out` receives the 2^l decoded layer-l bits, leaf decisions
/// land in `u0[g*2^l ..)`.
/// Returns the subtree metric, or -inf once any partial sum drops below `m_t`.
/// The metric is summed as (left subtree) + (right subtree) at every node, so
/// a run that never aborts produces bit-identical metrics regardless of `m_t`.
inline double sc_node(const double* y, std::uint8_t* out, std::uint8_t* u0,
                      const std::uint8_t* frozen, std::size_t g, int l, double m_t,
                      ScWorkspace& ws, OpCounters& ops) {
    if (l == 0) {
        if (frozen[g]) {
            out[0] = 0;
            u0[g] = 0;
            return y[0] < 0.0 ? y[0] : 0.0;
        }
        std::uint8_t u = (y[0] <= 0.0) ? 1 : 0;  // tie decodes to 1
        out[0] = u;
        u0[g] = u;
        return 0.0;
    }
    std::size_t half = std::size_t{1} << (l - 1);
    double* child = ws.llrs.data() + (half - 1);
    std::uint8_t* left = ws.bits.data() + (half - 1);

    for (std::size_t i = 0; i < half; ++i) child[i] = f_minus_minsum(y[i], y[i + half]);
    ops.fminus += half;

    double m_left = sc_node(child, left, u0, frozen, 2 * g, l - 1, m_t, ws, ops);
    if (m_left < m_t) return kAbortedMetric;

    for (std::size_t i = 0; i < half; ++i) child[i] = f_plus(y[i], y[i + half], left[i]);
    ops.fplus += half;

    double m_right = sc_node(child, out + half, u0, frozen, 2 * g + 1, l - 1, m_t, ws, ops);
    double m = m_left + m_right;
    if (m < m_t) return kAbortedMetric;

    for (std::size_t i = 0; i < half; ++i) out[i] = left[i] ^ out[i + half];
    return m;
}

} // namespace detail

/// Successive cancellation over the subtree rooted at outer-code index `g` of
/// layer `l`. Leaf decisions are written into `u0_sink` (resized to n). With
/// the default threshold the call never aborts; otherwise it returns aborted
/// with a -inf metric as soon as any accumulated partial metric falls below
/// `metric_threshold`, including a final check on the total.
inline DecodeOutcome sc_decode(const LlrVector& llrs, BitVector& u0_sink, const CodeSpec& spec,
                               int g, int l, double metric_threshold = kNoThreshold) {
    if (l < 0 || l > spec.m)
        throw std::invalid_argument("sc_decode: layer " + std::to_string(l) +
                                    " out of range for m=" + std::to_string(spec.m));
    std::size_t len = std::size_t{1} << l;
    if (llrs.size() != len)
        throw std::invalid_argument("sc_decode: expected " + std::to_string(len) +
                                    " LLRs, got " + std::to_string(llrs.size()));
    if (g < 0 || (static_cast<std::size_t>(g) + 1) * len > static_cast<std::size_t>(spec.n()))
        throw std::invalid_argument("sc_decode: outer-code index " + std::to_string(g) +
                                    " out of range");
    if (metric_threshold > 0.0)
        throw std::invalid_argument("sc_decode: metric threshold must be <= 0");
    for (double v : llrs)
        if (!std::isfinite(v)) throw std::invalid_argument("sc_decode: non-finite LLR");

    u0_sink.resize(static_cast<std::size_t>(spec.n()), 0);
    auto mask = frozen_mask(spec);
    detail::ScWorkspace ws;
    ws.ensure(static_cast<int>(len));

    DecodeOutcome outcome;
    outcome.codeword.assign(len, 0);
    double m = detail::sc_node(llrs.data(), outcome.codeword.data(), u0_sink.data(), mask.data(),
                               static_cast<std::size_t>(g), l, metric_threshold, ws, outcome.ops);
    if (m < metric_threshold) m = kAbortedMetric;  // covers the l = 0 top-level call
    outcome.aborted = (m == kAbortedMetric);
    outcome.metric = m;
    outcome.layer0 = u0_sink;
    return outcome;
}

/// Full-code decode with a fresh layer-0 sink.
inline DecodeOutcome sc_decode(const CodeSpec& spec, const LlrVector& channel_llrs,
                               double metric_threshold = kNoThreshold) {
    BitVector sink;
    return sc_decode(channel_llrs, sink, spec, 0, spec.m, metric_threshold);
}

/// Codeword-side metric: sum of min{0, (1-2c_i) y_i} over all positions.
inline double codeword_metric(const BitVector& codeword, const LlrVector& channel_llrs) {
    if (codeword.size() != channel_llrs.size())
        throw std::invalid_argument("codeword_metric: length mismatch (" +
                                    std::to_string(codeword.size()) + " bits vs " +
                                    std::to_string(channel_llrs.size()) + " LLRs)");
    double m = 0.0;
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        double v = codeword[i] ? -channel_llrs[i] : channel_llrs[i];
        if (v < 0.0) m += v;
    }
    return m;
}

} // namespace permrm
