#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/rm_code.hpp"
#include "permrm/sc.hpp"
#include "permrm/types.hpp"

namespace permrm {

struct SclOutcome {
    BitVector codeword;
    BitVector layer0;
    double metric = 0.0;
    OpCounters ops;
};

namespace detail {

/// One SCL decision path. LLR levels live in a flat array (level j of size
/// 2^j at offset 2^j - 1); bit level j holds two slots of 2^j entries at
/// offset 2^(j+1) - 2: completed left-child bits in slot 0, right-child bits
/// in slot 1, combined upward as subtrees close.
struct SclPath {
    std::vector<double> llr;        // 2n - 1
    std::vector<std::uint8_t> bits; // 2n - 2
    BitVector codeword;             // n, filled by the final combine
    BitVector u0;                   // n
    double metric = 0.0;

    double* level(int j) { return llr.data() + ((std::size_t{1} << j) - 1); }
    std::uint8_t* slot(int j, int which) {
        return bits.data() + ((std::size_t{2} << j) - 2) + (which << j);
    }
};

} // namespace detail

/// LLR-based successive cancellation list decoding. Every non-frozen bit
/// splits each live path in two; when more than `L` paths exist the `L` with
/// the largest metrics survive, metric ties going to the lower candidate
/// index (candidates are ordered parent-major, bit-0-first). Penalties follow
/// the same min{0, (1-2u)y} rule as sc_decode, so each path's metric equals
/// codeword_metric of the codeword it settles on.
inline SclOutcome scl_decode(const CodeSpec& spec, const LlrVector& channel_llrs, int L) {
    if (L < 1) throw std::invalid_argument("scl_decode: list size must be >= 1");
    std::size_t n = static_cast<std::size_t>(spec.n());
    if (channel_llrs.size() != n)
        throw std::invalid_argument("scl_decode: expected " + std::to_string(n) +
                                    " LLRs, got " + std::to_string(channel_llrs.size()));
    int m = spec.m;
    auto mask = frozen_mask(spec);
    OpCounters ops;

    std::vector<detail::SclPath> paths(1);
    paths[0].llr.assign(2 * n - 1, 0.0);
    paths[0].bits.assign(2 * n - 2, 0);
    paths[0].codeword.assign(n, 0);
    paths[0].u0.assign(n, 0);
    std::copy(channel_llrs.begin(), channel_llrs.end(), paths[0].level(m));

    // Writes bit u for leaf phi and folds completed subtrees upward.
    auto settle = [&](detail::SclPath& path, std::size_t phi, std::uint8_t u) {
        path.u0[phi] = u;
        path.slot(0, phi & 1)[0] = u;
        for (int j = 0; (phi >> j) & 1; ++j) {
            const std::uint8_t* left = path.slot(j, 0);
            const std::uint8_t* right = path.slot(j, 1);
            std::size_t half = std::size_t{1} << j;
            std::uint8_t* dest = (j + 1 == m) ? path.codeword.data()
                                              : path.slot(j + 1, (phi >> (j + 1)) & 1);
            for (std::size_t i = 0; i < half; ++i) {
                dest[i] = left[i] ^ right[i];
                dest[i + half] = right[i];
            }
        }
    };

    for (std::size_t phi = 0; phi < n; ++phi) {
        int z = (phi == 0) ? m : std::countr_zero(phi);
        for (auto& path : paths) {
            if (phi > 0) {
                std::size_t half = std::size_t{1} << z;
                const double* parent = path.level(z + 1);
                const std::uint8_t* left = path.slot(z, 0);
                double* cur = path.level(z);
                for (std::size_t i = 0; i < half; ++i)
                    cur[i] = f_plus(parent[i], parent[i + half], left[i]);
                ops.fplus += half;
            }
            for (int j = std::min(z, m) - 1; j >= 0; --j) {
                std::size_t half = std::size_t{1} << j;
                const double* parent = path.level(j + 1);
                double* cur = path.level(j);
                for (std::size_t i = 0; i < half; ++i)
                    cur[i] = f_minus_minsum(parent[i], parent[i + half]);
                ops.fminus += half;
            }
        }

        if (mask[phi]) {
            for (auto& path : paths) {
                double y = path.level(0)[0];
                if (y < 0.0) path.metric += y;
                settle(path, phi, 0);
            }
            continue;
        }

        // split: candidate 2p is parent p with bit 0, candidate 2p+1 with bit 1
        std::size_t alive = paths.size();
        std::vector<double> cand_metric(2 * alive);
        for (std::size_t p = 0; p < alive; ++p) {
            double y = paths[p].level(0)[0];
            cand_metric[2 * p] = paths[p].metric + (y < 0.0 ? y : 0.0);
            cand_metric[2 * p + 1] = paths[p].metric + (y > 0.0 ? -y : 0.0);
        }
        std::vector<std::size_t> order(2 * alive);
        std::iota(order.begin(), order.end(), 0);
        if (order.size() > static_cast<std::size_t>(L)) {
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return cand_metric[a] > cand_metric[b];
            });
            order.resize(static_cast<std::size_t>(L));
            std::sort(order.begin(), order.end());
        }

        std::vector<detail::SclPath> next;
        next.reserve(order.size());
        for (std::size_t idx = 0; idx < order.size(); ++idx) {
            std::size_t parent = order[idx] / 2;
            bool last_child_of_parent =
                (idx + 1 == order.size()) || (order[idx + 1] / 2 != parent);
            if (last_child_of_parent)
                next.push_back(std::move(paths[parent]));
            else
                next.push_back(paths[parent]);
            next.back().metric = cand_metric[order[idx]];
            settle(next.back(), phi, static_cast<std::uint8_t>(order[idx] & 1));
        }
        paths = std::move(next);
    }

    std::size_t best = 0;
    for (std::size_t p = 1; p < paths.size(); ++p)
        if (paths[p].metric > paths[best].metric) best = p;

    SclOutcome out;
    out.codeword = std::move(paths[best].codeword);
    out.layer0 = std::move(paths[best].u0);
    out.metric = paths[best].metric;
    out.ops = ops;
    return out;
}

} // namespace permrm
