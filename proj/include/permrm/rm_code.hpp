#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/types.hpp"

namespace permrm {

/// A length-2^m code given by its frozen index set. Frozen positions carry
/// the value 0; the remaining k = n - |frozen| positions carry information.
struct CodeSpec {
    int m = 0;
    std::vector<int> frozen;   // strictly increasing indices in [0, 2^m)
    int r = -1;                // RM order when built by rm_code(), else -1

    int n() const { return 1 << m; }
    int dimension() const { return n() - static_cast<int>(frozen.size()); }
};

/// 1 at frozen positions, 0 elsewhere. Decoders use this for O(1) lookups.
inline std::vector<std::uint8_t> frozen_mask(const CodeSpec& spec) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(spec.n()), 0);
    for (int i : spec.frozen) mask[static_cast<std::size_t>(i)] = 1;
    return mask;
}

/// RM(r,m) as a polar code: index i is frozen iff popcount(i) < m - r.
inline CodeSpec rm_code(int m, int r) {
    if (m < 1)
        throw std::invalid_argument("rm_code: m must be positive, got " + std::to_string(m));
    if (r < 0 || r > m)
        throw std::invalid_argument("rm_code: order r must lie in [0, m], got r=" +
                                    std::to_string(r) + " for m=" + std::to_string(m));
    CodeSpec spec;
    spec.m = m;
    spec.r = r;
    for (int i = 0; i < (1 << m); ++i)
        if (std::popcount(static_cast<unsigned>(i)) < m - r) spec.frozen.push_back(i);
    return spec;
}

/// m-fold Kronecker power of [[1,0],[1,1]]. Test oracle only; encoding always
/// goes through the O(n log n) layer passes in encode().
inline std::vector<std::vector<std::uint8_t>> generator_matrix(int m) {
    if (m < 0) throw std::invalid_argument("generator_matrix: m must be nonnegative");
    if (m > 16) throw std::length_error("generator_matrix: refusing m > 16 (matrix is 2^m x 2^m)");
    std::size_t n = std::size_t{1} << m;
    std::vector<std::vector<std::uint8_t>> a(n, std::vector<std::uint8_t>(n, 0));
    // A[i][j] = 1 iff j's digit set is a subset of i's.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = ((j & ~i) == 0) ? 1 : 0;
    return a;
}

/// One butterfly layer: within every block of 2^(l+1) indices, the lower half
/// absorbs the upper half, u[i] ^= u[i + 2^l].
inline void encode_layer(BitVector& u, int l) {
    std::size_t half = std::size_t{1} << l;
    std::size_t block = half << 1;
    for (std::size_t base = 0; base < u.size(); base += block)
        for (std::size_t i = base; i < base + half; ++i) u[i] ^= u[i + half];
}

/// Layer-pass encoding, layer 0 first. The transform is an involution over
/// GF(2), so encode(encode(u)) = u once frozen-bit checks are out of the way.
inline BitVector encode(const CodeSpec& spec, const BitVector& u0) {
    std::size_t n = static_cast<std::size_t>(spec.n());
    if (u0.size() != n)
        throw std::invalid_argument("encode: expected " + std::to_string(n) + " bits, got " +
                                    std::to_string(u0.size()));
    for (int i : spec.frozen)
        if (u0[static_cast<std::size_t>(i)] != 0)
            throw std::invalid_argument("encode: nonzero value at frozen position " +
                                        std::to_string(i));
    BitVector u = u0;
    for (int l = 0; l < spec.m; ++l) encode_layer(u, l);
    return u;
}

/// Places info bits into the non-frozen positions in increasing index order.
inline BitVector scatter_info(const CodeSpec& spec, const BitVector& info) {
    if (static_cast<int>(info.size()) != spec.dimension())
        throw std::invalid_argument("scatter_info: expected " +
                                    std::to_string(spec.dimension()) + " info bits, got " +
                                    std::to_string(info.size()));
    BitVector u0(static_cast<std::size_t>(spec.n()), 0);
    auto mask = frozen_mask(spec);
    std::size_t next = 0;
    for (std::size_t i = 0; i < u0.size(); ++i)
        if (!mask[i]) u0[i] = info[next++];
    return u0;
}

} // namespace permrm
