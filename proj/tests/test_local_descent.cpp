#include "oracles.hpp"
#include "twosel/local_descent.hpp"

#include <doctest.h>

using namespace twosel;

namespace {

const std::vector<FullTwoTorsionModel>& models() {
    static const std::vector<FullTwoTorsionModel> m{FullTwoTorsionModel(-1, 0, 1), FullTwoTorsionModel(0, 1, 2),
                                                    FullTwoTorsionModel(0, 5, 1), FullTwoTorsionModel(-5, 0, 5),
                                                    FullTwoTorsionModel(-3, 4, 11)};
    return m;
}

std::vector<Place> probe_places(const FullTwoTorsionModel& m) {
    std::set<Place> s;
    for (const auto& v : sigma_set(m).places) s.insert(v);
    for (int p : {3, 5, 7, 11, 13, 17, 19, 23}) s.insert(Place::finite(p));
    return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("expected local dimensions") {
    const FullTwoTorsionModel e(-1, 0, 1);
    CHECK(expected_local_dim(e, LocalSquareClass::trivial(Place::finite(5))) == 2);
    CHECK(expected_local_dim(e, LocalSquareClass::trivial(Place::infinity())) == 1);
    CHECK(expected_local_dim(e, LocalSquareClass::trivial(Place::finite(2))) == 3);
}

TEST_CASE("torsion images are in every untwisted image") {
    for (const auto& m : models()) {
        for (const auto& v : probe_places(m)) {
            const auto image = kummer_image(m, LocalSquareClass::trivial(v));
            for (const auto& t : torsion_images(m.roots(), v)) CHECK(image.contains(t));
        }
    }
}

TEST_CASE("images are maximal isotropic for every class") {
    for (const auto& m : models()) {
        for (const auto& v : probe_places(m)) {
            for (const auto& c : all_classes(v)) {
                CAPTURE(v.to_string());
                CAPTURE(c.to_string());
                const auto image = kummer_image(m, c);
                CHECK(image.dim() == v.width());
                CHECK(static_cast<int>(image.dim()) == expected_local_dim(m, c));
                CHECK(gf2::rank(image.vectors()) == image.dim());
                CHECK(is_isotropic(image));
            }
        }
    }
}

TEST_CASE("h at trivial, sign and ramified classes") {
    for (const auto& m : models()) {
        for (const auto& v : probe_places(m)) CHECK(h_v(m, LocalSquareClass::trivial(v)) == 0);
        CHECK(h_v(m, LocalSquareClass(Place::infinity(), 1)) == 1);
        const auto sigma = sigma_set(m);
        for (int q : {3, 7, 11, 13, 17, 19, 23, 29}) {
            if (sigma.contains(Place::finite(q))) continue;
            const Place w = Place::finite(q);
            for (std::uint8_t bits : {1, 3}) {
                const LocalSquareClass ram(w, bits);
                CHECK(intersect(kummer_image(m, LocalSquareClass::trivial(w)), kummer_image(m, ram)).dim() == 0);
                CHECK(h_v(m, ram) == place_class(m, q));
            }
        }
    }
}

TEST_CASE("good primes: unramified image and unramified twists") {
    for (const auto& m : models()) {
        const auto sigma = sigma_set(m);
        for (long q = 3; q < 120; q += 2) {
            if (!oracle::is_prime_naive(q) || sigma.contains(Place::finite(q))) continue;
            const Place w = Place::finite(q);
            const auto unit = kummer_image(m, LocalSquareClass::trivial(w));
            for (const auto& c : unit.basis) {
                CHECK_FALSE(c.first.is_ramified());
                CHECK_FALSE(c.second.is_ramified());
            }
            const auto unram = kummer_image(m, LocalSquareClass(w, 2));
            CHECK(intersect(unit, unram).dim() == unit.dim());
            if (oracle::four_torsion_count(m.roots(), q) == 4) {
                gf2::Rows tors;
                for (const auto& t : torsion_images(m.roots(), w)) tors.push_back(t.to_bits());
                CHECK(gf2::rank(tors) == 2);
            }
        }
    }
}

TEST_CASE("image cache and sampling budget") {
    clear_local_image_cache();
    CHECK(local_image_cache_size() == 0);
    const FullTwoTorsionModel m(-3, 4, 11);
    SamplingOptions tiny;
    tiny.budget = 1;
    CHECK_THROWS_AS(kummer_image(m, LocalSquareClass::trivial(Place::finite(2)), tiny), SamplingBudgetExceeded);
    kummer_image(m, LocalSquareClass::trivial(Place::finite(2)));
    CHECK(local_image_cache_size() == 1);
}

TEST_CASE("scaled identification disagrees with the canonical one") {
    SamplingOptions scaled;
    scaled.identification = TwistIdentification::scaled_by_twist;
    const FullTwoTorsionModel m(-1, 0, 1);
    bool differs = false;
    for (const auto& v : probe_places(m))
        for (const auto& c : all_classes(v)) {
            const auto a = kummer_image(m, c), b = kummer_image(m, c, scaled);
            differs = differs || intersect(a, b).dim() != a.dim();
        }
    CHECK(differs);
}
