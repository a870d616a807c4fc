#include "oracles.hpp"
#include "twosel/curve.hpp"

#include <doctest.h>

using namespace twosel;

namespace {

std::vector<Place> places(std::initializer_list<int> primes) {
    std::vector<Place> out{Place::infinity()};
    for (int p : primes) out.push_back(Place::finite(p));
    return out;
}

}  // namespace

TEST_CASE("models and sigma sets") {
    const FullTwoTorsionModel e(-1, 0, 1);
    CHECK(e.discriminant() == 64);
    CHECK(sigma_set(e).places == places({2}));
    CHECK(sigma_set(FullTwoTorsionModel(0, 1, 2)).places == places({2}));
    const auto s5 = sigma_set(FullTwoTorsionModel(-5, 0, 5));
    CHECK(s5.places == places({2, 5}));
    CHECK(s5.n() == 3);
    CHECK(sigma_set(e, {Place::finite(11)}).places == places({2, 11}));
    CHECK_THROWS_AS(FullTwoTorsionModel(1, 1, 2), CurveError);
    CHECK(FullTwoTorsionModel(2, 0, 1).roots() == std::array<Integer, 3>{0, 1, 2});
}

TEST_CASE("twists") {
    const FullTwoTorsionModel e(-1, 0, 1);
    CHECK(twist(e, -1).roots() == e.roots());
    CHECK(twist(e, 5).roots() == FullTwoTorsionModel(-5, 0, 5).roots());
    CHECK(twist(FullTwoTorsionModel(0, 1, 2), 1).roots() == FullTwoTorsionModel(0, 1, 2).roots());
    CHECK_THROWS_AS(twist(e, 0), CurveError);
    CHECK_THROWS_AS(twist(e, 12), CurveError);
    for (int d : {3, -7, 15, -30, 105}) {
        const auto s = sigma_set(twist(FullTwoTorsionModel(0, 5, 1), d));
        auto expect = sigma_set(FullTwoTorsionModel(0, 5, 1));
        std::set<Place> all(expect.places.begin(), expect.places.end());
        for (const auto& [p, k] : factorize(d).factors) all.insert(Place::finite(p));
        CHECK(std::vector<Place>(all.begin(), all.end()) == s.places);
    }
}

TEST_CASE("two-torsion structure of long models") {
    CHECK(torsion_two_structure(LongModel{{1, -128, 0, -48, -4}}) == 1);
    CHECK(torsion_two_structure(LongModel{{0, 0, 0, -1, 0}}) == 2);
    CHECK(torsion_two_structure(LongModel{{0, 0, 0, 0, 2}}) == 0);
    const auto roots = two_division_roots(LongModel{{1, -128, 0, -48, -4}});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == Rational(-1, 4));
    for (const auto& m : {FullTwoTorsionModel(-1, 0, 1), FullTwoTorsionModel(0, 1, 2), FullTwoTorsionModel(0, 5, 1),
                          FullTwoTorsionModel(-7, 3, 40)}) {
        const auto lm = to_long_model(m);
        CHECK(torsion_two_structure(lm) == 2);
        CHECK(to_full_two_torsion(lm)->roots() == m.roots());
    }
    // y^2 + xy = x^3 - x has 2-division cubic 4x^3 + x^2 - 4x with roots 0 and (-1 +- sqrt 65)/8.
    CHECK(torsion_two_structure(LongModel{{1, 0, 0, -1, 0}}) == 1);
    // y^2 = x(x - 1/4)(x + 1/4) clears to roots scaled by 4.
    const auto scaled = to_full_two_torsion(LongModel{{0, 0, 0, Rational(-1, 16), 0}});
    REQUIRE(scaled);
    CHECK(scaled->roots() == std::array<Integer, 3>{-1, 0, 1});
}

TEST_CASE("curve parsing") {
    CHECK(std::holds_alternative<FullTwoTorsionModel>(parse_curve("-1, 0, 1")));
    CHECK(std::holds_alternative<LongModel>(parse_curve("[1,-128,0,-48,-4]")));
    CHECK_THROWS_AS(parse_curve("1,2"), CurveError);
    CHECK_THROWS_AS(parse_curve("[0,0,0,0,0]"), CurveError);
    CHECK_THROWS_AS(parse_curve("1/2,0,1"), CurveError);
    try {
        require_full_two_torsion(parse_curve("[1,-128,0,-48,-4]"));
        FAIL("expected an error");
    } catch (const CurveError& e) {
        CHECK(std::string(e.what()) == "not full 2-torsion (dim E(Q)[2] = 1)");
    }
}

TEST_CASE("place class") {
    const FullTwoTorsionModel e(-1, 0, 1);
    CHECK(place_class(e, 7) == 2);
    CHECK(place_class(e, 3) == 2);
    CHECK_THROWS_AS(place_class(e, 2), CurveError);
}

TEST_CASE("four-torsion criterion") {
    const FullTwoTorsionModel e(-1, 0, 1);
    CHECK(four_torsion_rational_at(e, 17));
    CHECK_FALSE(four_torsion_rational_at(e, 3));
    CHECK_FALSE(four_torsion_rational_at(e, 7));
    CHECK_THROWS_AS(four_torsion_rational_at(e, 2), CurveError);
    CHECK_THROWS_AS(four_torsion_rational_at(FullTwoTorsionModel(0, 5, 1), 5), CurveError);
}

TEST_CASE("four-torsion criterion agrees with point counts mod q") {
    for (const auto& m : {FullTwoTorsionModel(-1, 0, 1), FullTwoTorsionModel(0, 1, 2), FullTwoTorsionModel(0, 5, 1),
                          FullTwoTorsionModel(-3, 4, 11)}) {
        const auto sigma = sigma_set(m);
        for (long q = 3; q < 400; q += 2) {
            if (!oracle::is_prime_naive(q) || sigma.contains(Place::finite(q))) continue;
            CAPTURE(q);
            CHECK(four_torsion_rational_at(m, q) == (oracle::four_torsion_count(m.roots(), q) == 16));
        }
    }
}

TEST_CASE("reduction types") {
    const FullTwoTorsionModel m(0, 5, 1);
    CHECK(reduction_type(m, 5) == Reduction::multiplicative);
    CHECK(reduction_type(m, 3) == Reduction::good);
    CHECK(reduction_type(FullTwoTorsionModel(-1, 1, 3), 2) == Reduction::additive);
}
