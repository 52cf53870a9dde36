#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cstdint>
#include <numeric>

#include "oracles.hpp"
#include "permrm/rm_code.hpp"
#include "permrm/rng.hpp"

using namespace permrm;

namespace {
std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}
} // namespace

TEST_CASE("rm_code dimensions for the length-256 family", "[rmcodes]") {
    CHECK(rm_code(8, 2).dimension() == 37);
    CHECK(rm_code(8, 3).dimension() == 93);
    CHECK(rm_code(8, 4).dimension() == 163);
    CHECK(rm_code(8, 5).dimension() == 219);
}

TEST_CASE("rm_code frozen set by index weight", "[rmcodes]") {
    CodeSpec spec = rm_code(3, 1);
    CHECK(spec.frozen == std::vector<int>{0, 1, 2, 4});
    CHECK(spec.n() == 8);
    CHECK(spec.dimension() == 4);
    CHECK(spec.r == 1);
}

TEST_CASE("rm_code dimension equals the binomial sum", "[rmcodes]") {
    for (int m = 1; m <= 10; ++m)
        for (int r = 0; r <= m; ++r) {
            std::uint64_t k = 0;
            for (int i = 0; i <= r; ++i) k += binom(m, i);
            CHECK(rm_code(m, r).dimension() == static_cast<int>(k));
        }
}

TEST_CASE("rm_code argument validation", "[rmcodes]") {
    CHECK_THROWS_AS(rm_code(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(rm_code(3, -1), std::invalid_argument);
    CHECK_THROWS_AS(rm_code(3, 4), std::invalid_argument);
}

TEST_CASE("generator matrix is a GF(2) involution", "[rmcodes]") {
    for (int m = 1; m <= 6; ++m) {
        auto a = generator_matrix(m);
        std::size_t n = a.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                int acc = 0;
                for (std::size_t k = 0; k < n; ++k) acc ^= a[i][k] & a[k][j];
                REQUIRE(acc == (i == j ? 1 : 0));
            }
    }
}

TEST_CASE("generator matrix row weights are 2^popcount", "[rmcodes]") {
    auto a = generator_matrix(6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        int w = std::accumulate(a[i].begin(), a[i].end(), 0);
        CHECK(w == (1 << std::popcount(static_cast<unsigned>(i))));
    }
}

TEST_CASE("generator matrix size guard", "[rmcodes]") {
    CHECK_THROWS_AS(generator_matrix(17), std::length_error);
    CHECK_THROWS_AS(generator_matrix(-1), std::invalid_argument);
}

TEST_CASE("encode matches the matrix oracle", "[rmcodes]") {
    Rng rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
        int m = 1 + static_cast<int>(rng.below(6));
        int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(m) + 1));
        CodeSpec spec = rm_code(m, r);
        BitVector info(static_cast<std::size_t>(spec.dimension()));
        for (auto& b : info) b = rng.bit();
        BitVector u0 = scatter_info(spec, info);
        REQUIRE(encode(spec, u0) == testutil::matrix_encode(spec, u0));
    }
}

TEST_CASE("encode of a unit vector reproduces the matrix row", "[rmcodes]") {
    CodeSpec spec = rm_code(5, 5);  // nothing frozen, every unit vector is legal
    auto a = generator_matrix(5);
    for (std::size_t i = 0; i < a.size(); ++i) {
        BitVector u0(a.size(), 0);
        u0[i] = 1;
        CHECK(encode(spec, u0) == a[i]);
    }
}

TEST_CASE("layer-pass encoding is an involution", "[rmcodes]") {
    CodeSpec spec = rm_code(6, 6);  // no frozen positions, any vector encodes
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        BitVector u(static_cast<std::size_t>(spec.n()));
        for (auto& b : u) b = rng.bit();
        CHECK(encode(spec, encode(spec, u)) == u);
    }
}

TEST_CASE("encode validates its input", "[rmcodes]") {
    CodeSpec spec = rm_code(3, 1);
    CHECK_THROWS_AS(encode(spec, BitVector(4, 0)), std::invalid_argument);
    BitVector bad(8, 0);
    bad[0] = 1;  // index 0 is frozen for RM(1,3)
    CHECK_THROWS_AS(encode(spec, bad), std::invalid_argument);
}

TEST_CASE("scatter_info places bits outside the frozen set", "[rmcodes]") {
    CodeSpec spec = rm_code(3, 1);
    BitVector info{1, 0, 1, 1};
    BitVector u0 = scatter_info(spec, info);
    CHECK(u0 == BitVector{0, 0, 0, 1, 0, 0, 1, 1});
    CHECK_THROWS_AS(scatter_info(spec, BitVector(3, 0)), std::invalid_argument);

    auto mask = frozen_mask(spec);
    std::size_t next = 0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        if (mask[i])
            CHECK(u0[i] == 0);
        else
            CHECK(u0[i] == info[next++]);
    }
}

TEST_CASE("frozen_mask marks exactly the frozen indices", "[rmcodes]") {
    CodeSpec spec = rm_code(5, 2);
    auto mask = frozen_mask(spec);
    int count = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) ++count;
        bool frozen = std::popcount(static_cast<unsigned>(i)) < 3;
        CHECK(static_cast<bool>(mask[i]) == frozen);
    }
    CHECK(count == static_cast<int>(spec.frozen.size()));
}
