#pragma once

// Dense linear algebra over F2 for the small spaces that appear in descent:
// local cohomology (dimension <= 6) and global ambient spaces 2|S|.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace twosel::gf2 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector from_bits(std::initializer_list<int> bits);

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    bool is_zero() const;
    std::size_t popcount() const;
    std::optional<std::size_t> lowest_set() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector&) const = default;
    auto operator<=>(const BitVector&) const = default;

    /// Inner product sum_i a_i b_i.
    friend bool dot(const BitVector& a, const BitVector& b);

    BitVector concat(const BitVector& tail) const;
    BitVector slice(std::size_t begin, std::size_t length) const;

    std::string to_string() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

bool dot(const BitVector& a, const BitVector& b);

using Rows = std::vector<BitVector>;

/// Rank of the span of the given vectors.
std::size_t rank(const Rows& rows);

/// Independent basis of the span, in reduced echelon form.
Rows span_basis(const Rows& rows);

bool in_span(const BitVector& v, const Rows& basis);

/// Basis of { x : r . x = 0 for every row r }. `cols` is the ambient dimension.
Rows nullspace(const Rows& rows, std::size_t cols);

/// Basis of span(a) intersected with span(b).
Rows intersection(const Rows& a, const Rows& b, std::size_t cols);

/// Some x with r_i . x = rhs_i for all i, or nothing if inconsistent.
std::optional<BitVector> solve(const Rows& rows, const BitVector& rhs, std::size_t cols);

/// Coordinates of v with respect to an independent family, if v lies in its span.
std::optional<BitVector> coordinates(const BitVector& v, const Rows& family);

}  // namespace twosel::gf2
