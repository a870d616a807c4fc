#include "twosel/padic.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace twosel;

namespace {

const Place kInf = Place::infinity();

std::vector<Place> test_places() { return {kInf, Place::finite(2), Place::finite(3), Place::finite(5), Place::finite(7), Place::finite(13)}; }

}  // namespace

TEST_CASE("places") {
    CHECK(Place::parse("inf").is_infinite());
    CHECK(Place::parse("7").prime() == 7);
    CHECK_THROWS(Place::parse("9"));
    CHECK(kInf < Place::finite(2));
    CHECK(Place::finite(2).width() == 3);
}

TEST_CASE("local classes") {
    const auto c18 = local_class(Integer(18), Place::finite(3));
    CHECK_FALSE(c18.bit(0));
    CHECK(c18.bit(1));
    CHECK(local_class(Integer(-4), kInf).bit(0));
    CHECK(local_class(Integer(17), Place::finite(2)).is_trivial());
    CHECK(local_class(Rational(3, 4), Place::finite(2)) == local_class(Integer(3), Place::finite(2)));
    for (const auto& v : test_places()) {
        for (const auto& c : all_classes(v)) CHECK(local_class(c.representative(), v) == c);
        CHECK(all_classes(v).size() == (std::size_t{1} << v.width()));
    }
}

TEST_CASE("local class is a homomorphism and kills squares") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        const Integer a(static_cast<long>(rng() % 4000) - 2000), b(static_cast<long>(rng() % 4000) - 2000);
        const Integer s(static_cast<unsigned long>(rng() % 60 + 1));
        if (a == 0 || b == 0) continue;
        for (const auto& v : test_places()) {
            CHECK(local_class(Integer(a * b), v) == local_class(a, v) * local_class(b, v));
            CHECK(local_class(Integer(a * s * s), v) == local_class(a, v));
        }
    }
}

TEST_CASE("hilbert symbol values") {
    CHECK(hilbert(-1, -1, kInf) == -1);
    CHECK(hilbert(-1, -1, Place::finite(2)) == -1);
    CHECK(hilbert(-1, -1, Place::finite(3)) == 1);
    for (const auto& v : test_places())
        for (const auto& c : all_classes(v)) CHECK(hilbert(LocalSquareClass::trivial(v), c) == 1);
    CHECK(hilbert(2, 5, Place::finite(5)) == -1);
    CHECK(hilbert(2, 3, Place::finite(2)) == -1);
}

TEST_CASE("hilbert product formula, symmetry and bimultiplicativity") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 300; ++i) {
        const Integer a(static_cast<long>(rng() % 2000) - 1000), b(static_cast<long>(rng() % 2000) - 1000);
        const Integer c(static_cast<long>(rng() % 2000) - 1000);
        if (a == 0 || b == 0 || c == 0) continue;
        std::set<Place> places{kInf, Place::finite(2)};
        for (const Integer& x : {a, b, c})
            for (const auto& [p, e] : factorize(x).factors) places.insert(Place::finite(p));
        int product = 1;
        for (const auto& v : places) {
            product *= hilbert(a, b, v);
            CHECK(hilbert(a, b, v) == hilbert(b, a, v));
            CHECK(hilbert(Rational(a * c), b, v) == hilbert(a, b, v) * hilbert(c, b, v));
        }
        CHECK(product == 1);
    }
}

TEST_CASE("hilbert symbol sees small rational solutions") {
    // A nontrivial integer solution of z^2 = a x^2 + b y^2 forces (a,b)_v = 1 everywhere.
    for (long a = -12; a <= 12; ++a) {
        for (long b = -12; b <= 12; ++b) {
            if (!a || !b) continue;
            bool found = false;
            for (long x = 0; x <= 12 && !found; ++x)
                for (long y = 0; y <= 12 && !found; ++y) {
                    if (!x && !y) continue;
                    const long rhs = a * x * x + b * y * y;
                    if (rhs < 0) continue;
                    const long z = std::lround(std::sqrt(static_cast<double>(rhs)));
                    found = z * z == rhs;
                }
            if (!found) continue;
            for (const auto& v : test_places()) CHECK(hilbert(Integer(a), Integer(b), v) == 1);
        }
    }
}

TEST_CASE("local pairing examples and nondegeneracy") {
    const Place p = Place::finite(7);
    const auto pc = local_class(Integer(7), p), one = LocalSquareClass::trivial(p);
    const auto u = local_class(Integer(3), p);  // non-residue mod 7
    CHECK(local_pairing(LocalCocycle{pc, one}, LocalCocycle{pc, one}) == 0);
    CHECK(local_pairing(LocalCocycle{pc, one}, LocalCocycle{one, u}) == 1);
    for (const auto& v : test_places()) {
        const std::size_t n = 2 * v.width();
        gf2::Rows gram;
        for (std::size_t i = 0; i < n; ++i) {
            gf2::BitVector row(n), ei(n);
            ei.set(i);
            for (std::size_t j = 0; j < n; ++j) {
                gf2::BitVector ej(n);
                ej.set(j);
                row.set(j, local_pairing(ei, ej, v));
            }
            gram.push_back(row);
            CHECK(local_pairing(ei, gf2::BitVector(n), v) == 0);
        }
        CHECK(gf2::rank(gram) == n);
    }
}
