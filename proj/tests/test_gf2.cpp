#include "twosel/gf2.hpp"

#include <doctest.h>

#include <random>

using namespace twosel::gf2;

namespace {

BitVector random_vector(std::mt19937_64& rng, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

Rows random_rows(std::mt19937_64& rng, std::size_t count, std::size_t n) {
    Rows r;
    for (std::size_t i = 0; i < count; ++i) r.push_back(random_vector(rng, n));
    return r;
}

std::vector<BitVector> all_vectors(std::size_t n) {
    std::vector<BitVector> out;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
        BitVector v(n);
        for (std::size_t i = 0; i < n; ++i) v.set(i, (m >> i) & 1);
        out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("bit vector basics") {
    auto v = BitVector::from_bits({1, 0, 1, 1});
    CHECK(v.popcount() == 3);
    CHECK(v.to_string() == "1011");
    CHECK(v.slice(1, 2).to_string() == "01");
    CHECK(v.concat(BitVector::from_bits({1})).size() == 5);
    CHECK(dot(v, BitVector::from_bits({1, 1, 1, 0})) == false);
    BitVector big(130);
    big.set(129);
    CHECK(big.lowest_set() == 129U);
}

TEST_CASE("nullspace is annihilated and has complementary dimension") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 70, m = rng() % 12;
        const auto rows = random_rows(rng, m, n);
        const auto ker = nullspace(rows, n);
        CHECK(ker.size() + rank(rows) == n);
        CHECK(rank(ker) == ker.size());
        for (const auto& x : ker)
            for (const auto& r : rows) CHECK_FALSE(dot(r, x));
    }
}

TEST_CASE("intersection agrees with enumeration") {
    std::mt19937_64 rng(9);
    const auto space = all_vectors(6);
    for (int t = 0; t < 100; ++t) {
        const auto a = random_rows(rng, rng() % 5, 6), b = random_rows(rng, rng() % 5, 6);
        std::size_t common = 0;
        for (const auto& v : space) common += in_span(v, a) && in_span(v, b);
        const auto meet = intersection(a, b, 6);
        CHECK(common == (std::size_t{1} << meet.size()));
        for (const auto& v : meet) CHECK((in_span(v, a) && in_span(v, b)));
    }
}

TEST_CASE("solve and coordinates") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 10;
        const auto rows = random_rows(rng, 1 + rng() % 8, n);
        const auto x = random_vector(rng, n);
        BitVector rhs(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) rhs.set(i, dot(rows[i], x));
        const auto y = solve(rows, rhs, n);
        REQUIRE(y);
        for (std::size_t i = 0; i < rows.size(); ++i) CHECK(dot(rows[i], *y) == rhs.get(i));
    }
    Rows inconsistent{BitVector::from_bits({1, 0}), BitVector::from_bits({1, 0})};
    CHECK_FALSE(solve(inconsistent, BitVector::from_bits({0, 1}), 2));
    Rows fam{BitVector::from_bits({1, 1, 0}), BitVector::from_bits({0, 1, 1})};
    CHECK(coordinates(BitVector::from_bits({1, 0, 1}), fam) == BitVector::from_bits({1, 1}));
    CHECK_FALSE(coordinates(BitVector::from_bits({1, 0, 0}), fam));
}
