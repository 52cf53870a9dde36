#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/rng.hpp"
#include "permrm/types.hpp"

namespace permrm {

/// Maps index i with binary digits (b_{m-1} ... b_0) to the index whose digit
/// at position layer_map[j] equals b_j. Popcount is preserved, so the frozen
/// set of any weight-constructed code is invariant under the result.
inline std::vector<std::uint32_t> bit_permutation(const std::vector<int>& layer_map, int m) {
    if (static_cast<int>(layer_map.size()) != m)
        throw std::invalid_argument("bit_permutation: layer_map has " +
                                    std::to_string(layer_map.size()) + " entries, expected " +
                                    std::to_string(m));
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int v : layer_map) {
        if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("bit_permutation: layer_map is not a permutation of 0.." +
                                        std::to_string(m - 1));
        seen[static_cast<std::size_t>(v)] = true;
    }
    std::size_t n = std::size_t{1} << m;
    std::vector<std::uint32_t> map(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t t = 0;
        for (int j = 0; j < m; ++j)
            if (i >> j & 1) t |= std::uint32_t{1} << layer_map[static_cast<std::size_t>(j)];
        map[i] = t;
    }
    return map;
}

/// A factor-graph layer permutation together with its induced index maps.
struct LayerPermutation {
    std::vector<int> layer_map;
    std::vector<std::uint32_t> bit_map;
    std::vector<std::uint32_t> inv_bit_map;

    static LayerPermutation make(const std::vector<int>& layer_map) {
        LayerPermutation p;
        p.layer_map = layer_map;
        p.bit_map = bit_permutation(layer_map, static_cast<int>(layer_map.size()));
        p.inv_bit_map.assign(p.bit_map.size(), 0);
        for (std::size_t i = 0; i < p.bit_map.size(); ++i)
            p.inv_bit_map[p.bit_map[i]] = static_cast<std::uint32_t>(i);
        return p;
    }

    static LayerPermutation identity(int m) {
        std::vector<int> id(static_cast<std::size_t>(m));
        std::iota(id.begin(), id.end(), 0);
        return make(id);
    }

    bool is_identity() const {
        for (std::size_t j = 0; j < layer_map.size(); ++j)
            if (layer_map[j] != static_cast<int>(j)) return false;
        return true;
    }
};

struct PermutationSample {
    std::vector<LayerPermutation> perms;
    bool with_replacement = false;  // set when L exceeds the m! distinct permutations
};

/// Identity first, then L-1 uniformly random layer permutations. Sampling is
/// without replacement while L <= m!; beyond that duplicates are unavoidable
/// and the result is flagged.
inline PermutationSample sample_permutations(int m, int L, Rng& rng) {
    if (m < 1) throw std::invalid_argument("sample_permutations: m must be positive");
    if (L < 1) throw std::invalid_argument("sample_permutations: L must be >= 1");

    std::uint64_t fact = 1;
    for (int i = 2; i <= m; ++i) fact *= static_cast<std::uint64_t>(i);
    bool replace = static_cast<std::uint64_t>(L) > fact;

    auto draw = [&] {
        std::vector<int> lm(static_cast<std::size_t>(m));
        std::iota(lm.begin(), lm.end(), 0);
        for (int i = m - 1; i > 0; --i)
            std::swap(lm[static_cast<std::size_t>(i)],
                      lm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        return lm;
    };

    PermutationSample sample;
    sample.with_replacement = replace;
    sample.perms.push_back(LayerPermutation::identity(m));
    std::set<std::vector<int>> taken = {sample.perms[0].layer_map};
    while (static_cast<int>(sample.perms.size()) < L) {
        auto lm = draw();
        if (!replace && !taken.insert(lm).second) continue;
        sample.perms.push_back(LayerPermutation::make(lm));
    }
    return sample;
}

} // namespace permrm
