#include "twosel/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace twosel::gf2 {

BitVector BitVector::from_bits(std::initializer_list<int> bits) {
    BitVector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b & 1);
    return v;
}

void BitVector::set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value)
        words_[i / 64] |= mask;
    else
        words_[i / 64] &= ~mask;
}

bool BitVector::is_zero() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

std::size_t BitVector::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::optional<std::size_t> BitVector::lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return std::nullopt;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool dot(const BitVector& a, const BitVector& b) {
    if (a.size_ != b.size_) throw std::invalid_argument("BitVector size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) acc ^= a.words_[w] & b.words_[w];
    return std::popcount(acc) & 1;
}

BitVector BitVector::concat(const BitVector& tail) const {
    BitVector out(size_ + tail.size_);
    for (std::size_t i = 0; i < size_; ++i) out.set(i, get(i));
    for (std::size_t i = 0; i < tail.size_; ++i) out.set(size_ + i, tail.get(i));
    return out;
}

BitVector BitVector::slice(std::size_t begin, std::size_t length) const {
    BitVector out(length);
    for (std::size_t i = 0; i < length; ++i) out.set(i, get(begin + i));
    return out;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

namespace {

// In-place reduced row echelon form; returns pivot columns, one per kept row.
std::vector<std::size_t> reduce(Rows& rows) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows.front().size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && !rows[sel].get(c)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

std::size_t rank(const Rows& rows) {
    Rows copy = rows;
    return reduce(copy).size();
}

Rows span_basis(const Rows& rows) {
    Rows copy = rows;
    reduce(copy);
    return copy;
}

bool in_span(const BitVector& v, const Rows& basis) {
    if (basis.empty()) return v.is_zero();
    Rows copy = basis;
    const std::size_t before = reduce(copy).size();
    copy.push_back(v);
    return reduce(copy).size() == before;
}

Rows nullspace(const Rows& rows, std::size_t cols) {
    Rows m = rows;
    for (const auto& r : m)
        if (r.size() != cols) throw std::invalid_argument("nullspace: column mismatch");
    const auto pivots = reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Rows basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        BitVector x(cols);
        x.set(free);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (m[i].get(free)) x.set(pivots[i]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

Rows intersection(const Rows& a, const Rows& b, std::size_t cols) {
    const Rows ba = span_basis(a);
    const Rows bb = span_basis(b);
    if (ba.empty() || bb.empty()) return {};
    // Solve sum x_i a_i = sum y_j b_j: kernel of the (cols) x (|a|+|b|) system.
    const std::size_t unknowns = ba.size() + bb.size();
    Rows system;
    for (std::size_t c = 0; c < cols; ++c) {
        BitVector row(unknowns);
        for (std::size_t i = 0; i < ba.size(); ++i) row.set(i, ba[i].get(c));
        for (std::size_t j = 0; j < bb.size(); ++j) row.set(ba.size() + j, bb[j].get(c));
        system.push_back(std::move(row));
    }
    Rows out;
    for (const auto& k : nullspace(system, unknowns)) {
        BitVector v(cols);
        for (std::size_t i = 0; i < ba.size(); ++i)
            if (k.get(i)) v ^= ba[i];
        out.push_back(std::move(v));
    }
    return span_basis(out);
}

std::optional<BitVector> solve(const Rows& rows, const BitVector& rhs, std::size_t cols) {
    if (rhs.size() != rows.size()) throw std::invalid_argument("solve: rhs size mismatch");
    Rows aug;
    aug.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        BitVector r = rows[i].concat(BitVector(1));
        r.set(cols, rhs.get(i));
        aug.push_back(std::move(r));
    }
    const auto pivots = reduce(aug);
    BitVector x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == cols) return std::nullopt;
        x.set(pivots[i], aug[i].get(cols));
    }
    return x;
}

std::optional<BitVector> coordinates(const BitVector& v, const Rows& family) {
    const std::size_t n = v.size();
    Rows system;
    for (std::size_t c = 0; c < n; ++c) {
        BitVector row(family.size());
        for (std::size_t i = 0; i < family.size(); ++i) row.set(i, family[i].get(c));
        system.push_back(std::move(row));
    }
    BitVector rhs(n);
    for (std::size_t c = 0; c < n; ++c) rhs.set(c, v.get(c));
    return solve(system, rhs, family.size());
}

}  // namespace twosel::gf2
