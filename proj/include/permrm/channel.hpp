#pragma once

#include <cmath>
#include <stdexcept>

#include "permrm/rng.hpp"
#include "permrm/types.hpp"

namespace permrm {

enum class SnrConvention { es_n0, eb_n0 };

/// Noise variance for a given SNR in dB. Per-symbol (es_n0) ignores the code
/// rate; per-information-bit (eb_n0) folds the rate in.
inline double snr_to_sigma2(double snr_db, SnrConvention convention, double rate = 1.0) {
    double lin = std::pow(10.0, snr_db / 10.0);
    if (convention == SnrConvention::es_n0) return 1.0 / (2.0 * lin);
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("snr_to_sigma2: rate must lie in (0,1] for eb_n0");
    return 1.0 / (2.0 * rate * lin);
}

/// BPSK over AWGN, then LLRs: s = 1 - 2c, r = s + N(0, sigma2), y = 2r/sigma2.
inline LlrVector awgn_llrs(const BitVector& codeword, double sigma2, Rng& rng) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("awgn_llrs: sigma2 must be > 0");
    double sd = std::sqrt(sigma2);
    double scale = 2.0 / sigma2;
    LlrVector y(codeword.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        double s = codeword[i] ? -1.0 : 1.0;
        y[i] = scale * (s + sd * rng.gaussian());
    }
    return y;
}

/// Noise-disabled channel: the LLRs the receiver would see at noise sample 0.
inline LlrVector noiseless_llrs(const BitVector& codeword, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("noiseless_llrs: sigma2 must be > 0");
    double scale = 2.0 / sigma2;
    LlrVector y(codeword.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = codeword[i] ? -scale : scale;
    return y;
}

} // namespace permrm
