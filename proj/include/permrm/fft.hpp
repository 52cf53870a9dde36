#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace permrm::detail {

/// Iterative radix-2 FFT. Twiddles come from a direct sin/cos table (no
/// incremental rotation), which keeps the error near sqrt(N) ulps even for
/// multi-million-point transforms.
class Fft {
public:
    explicit Fft(std::size_t n) : n_(n) {
        roots_.resize(n_ / 2);
        for (std::size_t k = 0; k < n_ / 2; ++k) {
            double ang = -6.283185307179586476925286766559 * static_cast<double>(k) /
                         static_cast<double>(n_);
            roots_[k] = {std::cos(ang), std::sin(ang)};
        }
    }

    void forward(std::vector<std::complex<double>>& a) const { run(a, false); }
    void inverse(std::vector<std::complex<double>>& a) const {
        run(a, true);
        double inv = 1.0 / static_cast<double>(n_);
        for (auto& v : a) v *= inv;
    }

private:
    void run(std::vector<std::complex<double>>& a, bool invert) const {
        // bit-reversal permutation
        for (std::size_t i = 1, j = 0; i < n_; ++i) {
            std::size_t bit = n_ >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            std::size_t stride = n_ / len;
            for (std::size_t i = 0; i < n_; i += len) {
                for (std::size_t k = 0; k < len / 2; ++k) {
                    std::complex<double> w = roots_[k * stride];
                    if (invert) w = std::conj(w);
                    std::complex<double> u = a[i + k];
                    std::complex<double> v = a[i + k + len / 2] * w;
                    a[i + k] = u + v;
                    a[i + k + len / 2] = u - v;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<std::complex<double>> roots_;
};

/// Linear convolution of two nonnegative real sequences. Small products are
/// summed directly (exact to rounding); larger ones go through one packed
/// complex FFT (a in the real lane, b in the imaginary lane).
inline std::vector<double> convolve_real(const std::vector<double>& a,
                                         const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t out_len = a.size() + b.size() - 1;
    if (a.size() * b.size() <= (std::size_t{1} << 20)) {
        std::vector<double> out(out_len, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    }
    std::size_t n = std::bit_ceil(out_len);
    Fft fft(n);
    std::vector<std::complex<double>> z(n, {0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) z[i] = {a[i], 0.0};
    for (std::size_t i = 0; i < b.size(); ++i) z[i] += std::complex<double>{0.0, b[i]};
    fft.forward(z);
    // Split the packed spectrum: A_k = (Z_k + conj(Z_{n-k}))/2, B_k = (Z_k - conj(Z_{n-k}))/2i.
    std::vector<std::complex<double>> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> zk = z[k];
        std::complex<double> zr = std::conj(z[(n - k) & (n - 1)]);
        std::complex<double> ak = 0.5 * (zk + zr);
        std::complex<double> bk = std::complex<double>{0.0, -0.5} * (zk - zr);
        w[k] = ak * bk;
    }
    fft.inverse(w);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = w[i].real();
    return out;
}

} // namespace permrm::detail
