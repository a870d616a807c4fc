#include "twosel/padic.hpp"

#include <stdexcept>

namespace twosel {

Place Place::finite(const Integer& p) {
    if (!is_probable_prime(p)) throw std::invalid_argument("place must be a prime, got " + p.get_str());
    Place v;
    v.prime_ = p;
    return v;
}

Place Place::parse(const std::string& text) {
    if (text == "inf" || text == "oo" || text == "infinity") return infinity();
    return finite(Integer(parse_rational(text)));
}

LocalSquareClass::LocalSquareClass(Place place, std::uint8_t bits) : place_(std::move(place)), bits_(bits) {
    if (bits_ >> place_.width()) throw std::invalid_argument("square class bits exceed width at " + place_.to_string());
}

LocalSquareClass LocalSquareClass::from_bits(const Place& place, const gf2::BitVector& bits) {
    if (bits.size() != place.width()) throw std::invalid_argument("square class width mismatch");
    std::uint8_t b = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) b |= static_cast<std::uint8_t>(bits.get(i)) << i;
    return {place, b};
}

gf2::BitVector LocalSquareClass::to_bits() const {
    gf2::BitVector v(place_.width());
    for (std::size_t i = 0; i < place_.width(); ++i) v.set(i, bit(i));
    return v;
}

Integer LocalSquareClass::representative() const {
    if (place_.is_infinite()) return bit(0) ? -1 : 1;
    Integer r = bit(0) ? place_.prime() : Integer(1);
    if (place_.is_two()) {
        if (bit(1)) r = -r;
        if (bit(2)) r *= 5;
    } else if (bit(1)) {
        r *= least_nonresidue(place_.prime());
    }
    return r;
}

LocalSquareClass LocalSquareClass::operator*(const LocalSquareClass& o) const {
    if (!(place_ == o.place_)) throw std::invalid_argument("square classes at different places");
    return {place_, static_cast<std::uint8_t>(bits_ ^ o.bits_)};
}

std::string LocalSquareClass::to_string() const { return place_.to_string() + ":" + representative().get_str(); }

LocalSquareClass local_class(const Integer& n, const Place& v) {
    if (n == 0) throw std::invalid_argument("local_class of zero");
    if (v.is_infinite()) return {v, static_cast<std::uint8_t>(n < 0 ? 1 : 0)};
    const Integer& p = v.prime();
    Integer unit;
    const auto e = mpz_remove(unit.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    std::uint8_t bits = e & 1U;
    if (v.is_two()) {
        // unit mod 8: 1 -> (0,0), 7 = -1 -> (1,0), 5 -> (0,1), 3 = -5 -> (1,1)
        const unsigned long r = mpz_fdiv_ui(unit.get_mpz_t(), 8);
        if (r == 7 || r == 3) bits |= 2;
        if (r == 5 || r == 3) bits |= 4;
    } else if (legendre(unit, p) == -1) {
        bits |= 2;
    }
    return {v, bits};
}

LocalSquareClass local_class(const Rational& r, const Place& v) {
    // num/den and num*den agree modulo squares.
    return local_class(Integer(r.get_num() * r.get_den()), v);
}

int hilbert(const LocalSquareClass& a, const LocalSquareClass& b) {
    if (!(a.place() == b.place())) throw std::invalid_argument("hilbert: classes at different places");
    const Place& v = a.place();
    int e = 0;
    if (v.is_infinite()) {
        e = a.bit(0) & b.bit(0);
    } else if (v.is_two()) {
        // (-1)^{eps(u)eps(w) + alpha*omega(w) + beta*omega(u)}, eps = (-1)-bit, omega = 5-bit
        e = (a.bit(1) & b.bit(1)) ^ (a.bit(0) & b.bit(2)) ^ (b.bit(0) & a.bit(2));
    } else {
        // (-1)^{alpha beta eps(p)} (u/p)^beta (w/p)^alpha
        const bool eps_p = mpz_fdiv_ui(v.prime().get_mpz_t(), 4) == 3;
        e = (a.bit(0) & b.bit(0) & eps_p) ^ (a.bit(1) & b.bit(0)) ^ (b.bit(1) & a.bit(0));
    }
    return e ? -1 : 1;
}

int hilbert(const Rational& a, const Rational& b, const Place& v) {
    return hilbert(local_class(a, v), local_class(b, v));
}

LocalCocycle LocalCocycle::from_bits(const Place& v, const gf2::BitVector& bits) {
    const std::size_t w = v.width();
    if (bits.size() != 2 * w) throw std::invalid_argument("cocycle width mismatch");
    return {LocalSquareClass::from_bits(v, bits.slice(0, w)), LocalSquareClass::from_bits(v, bits.slice(w, w))};
}

int local_pairing(const LocalCocycle& x, const LocalCocycle& y) {
    const int s = hilbert(x.first, y.second) * hilbert(x.second, y.first);
    return s == 1 ? 0 : 1;
}

int local_pairing(const gf2::BitVector& x, const gf2::BitVector& y, const Place& v) {
    return local_pairing(LocalCocycle::from_bits(v, x), LocalCocycle::from_bits(v, y));
}

std::vector<LocalSquareClass> all_classes(const Place& v) {
    std::vector<LocalSquareClass> out;
    for (unsigned b = 0; b < (1U << v.width()); ++b) out.emplace_back(v, static_cast<std::uint8_t>(b));
    return out;
}

}  // namespace twosel
