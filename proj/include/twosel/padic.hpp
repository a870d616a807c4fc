#pragma once

// Places of Q, local square-class groups Q_v^x / (Q_v^x)^2 in fixed bit
// coordinates, Hilbert symbols, and the local pairing on split E[2]-cocycles.
//
// Bit layout of a LocalSquareClass:
//   v = inf : [sign]
//   v = p   : [v_p parity, unit is a non-residue]
//   v = 2   : [v_2 parity, exponent of -1, exponent of 5]

#include "twosel/gf2.hpp"
#include "twosel/zarith.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace twosel {

class Place {
public:
    static Place infinity() { return Place(); }
    static Place finite(const Integer& p);
    /// Parses "inf" or a prime.
    static Place parse(const std::string& text);

    bool is_infinite() const { return prime_ == 0; }
    bool is_two() const { return prime_ == 2; }
    /// The prime of a finite place; 0 for the infinite place.
    const Integer& prime() const { return prime_; }

    /// Dimension of Q_v^x / (Q_v^x)^2 over F2.
    std::size_t width() const { return is_infinite() ? 1 : (is_two() ? 3 : 2); }

    std::string to_string() const { return is_infinite() ? "inf" : prime_.get_str(); }

    bool operator==(const Place& o) const { return prime_ == o.prime_; }
    // The infinite place sorts first, then primes ascending.
    std::strong_ordering operator<=>(const Place& o) const {
        const int c = cmp(prime_, o.prime_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    Place() = default;
    Integer prime_ = 0;
};

class LocalSquareClass {
public:
    LocalSquareClass(Place place, std::uint8_t bits);
    static LocalSquareClass trivial(const Place& place) { return {place, 0}; }
    static LocalSquareClass from_bits(const Place& place, const gf2::BitVector& bits);

    const Place& place() const { return place_; }
    std::uint8_t bits() const { return bits_; }
    bool bit(std::size_t i) const { return (bits_ >> i) & 1U; }
    bool is_trivial() const { return bits_ == 0; }
    /// Valuation is odd (always false at infinity).
    bool is_ramified() const { return !place_.is_infinite() && bit(0); }

    gf2::BitVector to_bits() const;

    /// Smallest-looking integer in the class: +-1 at inf, p^a u at odd p
    /// with u = 1 or the least non-residue, 2^a (-1)^s 5^t at 2.
    Integer representative() const;

    LocalSquareClass operator*(const LocalSquareClass& o) const;

    std::string to_string() const;

    bool operator==(const LocalSquareClass&) const = default;
    auto operator<=>(const LocalSquareClass& o) const {
        if (auto c = place_ <=> o.place_; c != 0) return c;
        return bits_ <=> o.bits_;
    }

private:
    Place place_;
    std::uint8_t bits_;
};

/// Restriction of a global square class to Q_v.
LocalSquareClass local_class(const Rational& r, const Place& v);
LocalSquareClass local_class(const Integer& n, const Place& v);

/// Hilbert symbol (a, b)_v as +1 / -1.
int hilbert(const LocalSquareClass& a, const LocalSquareClass& b);
int hilbert(const Rational& a, const Rational& b, const Place& v);

/// Element of H^1(Q_v, E[2]) for split E[2]: a pair of local square classes.
struct LocalCocycle {
    LocalSquareClass first;
    LocalSquareClass second;

    static LocalCocycle from_bits(const Place& v, const gf2::BitVector& bits);
    const Place& place() const { return first.place(); }
    gf2::BitVector to_bits() const { return first.to_bits().concat(second.to_bits()); }
    bool is_zero() const { return first.is_trivial() && second.is_trivial(); }
    LocalCocycle operator+(const LocalCocycle& o) const { return {first * o.first, second * o.second}; }
    bool operator==(const LocalCocycle&) const = default;
};

/// Additive value of <x, y>_v = (x1, y2)_v (x2, y1)_v.
int local_pairing(const LocalCocycle& x, const LocalCocycle& y);

/// The same pairing on raw coordinate vectors of length 2 * width(v).
int local_pairing(const gf2::BitVector& x, const gf2::BitVector& y, const Place& v);

/// Every class of Q_v^x / (Q_v^x)^2, trivial class first.
std::vector<LocalSquareClass> all_classes(const Place& v);

}  // namespace twosel
