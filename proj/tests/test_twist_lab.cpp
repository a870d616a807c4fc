#include "twosel/suites.hpp"

#include <doctest.h>

using namespace twosel;

namespace {

const FullTwoTorsionModel kE(-1, 0, 1);
const Place kInf = Place::infinity();

}  // namespace

TEST_CASE("ranks of twists") {
    CHECK(rank_of_twist(kE, 1) == 2);
    CHECK(rank_of_twist(kE, -1) == 2);
    CHECK(rank_of_twist(kE, 5) == 3);  // 5 is a congruent number
    CHECK(rank_of_twist(kE, 17) == 4);
    CHECK_THROWS_AS(rank_of_twist(kE, 18), CurveError);
}

TEST_CASE("masked twist rank equals descent on the twisted model") {
    for (const auto& c : corpus()) {
        for (const auto& d : scan_order(1, 300)) {
            CAPTURE(c.input);
            CAPTURE(d.get_str());
            CHECK(rank_of_twist(c.model, d) == rank_of_twist_direct(c.model, d));
        }
    }
}

TEST_CASE("parity identity") {
    const auto one = parity_check(kE, 1);
    CHECK(one.lhs == 0);
    CHECK(one.rhs == 0);
    const auto minus = parity_check(kE, -1);
    CHECK(minus.lhs == 0);
    CHECK(minus.equal);
    CHECK(h_v(kE, LocalSquareClass(kInf, 1)) == 1);
    CHECK(h_v(kE, local_class(Integer(-1), Place::finite(2))) == 1);
    const auto q = parity_check(kE, 17);
    CHECK(q.lhs == 0);
    CHECK(q.equal);
    for (const auto& c : corpus())
        for (const auto& d : scan_order(1, 500)) CHECK(parity_check(c.model, d).equal);
}

TEST_CASE("characters with prescribed local behaviour") {
    const FullTwoTorsionModel three(-1, 0, 2);
    REQUIRE(sigma_set(three).places == std::vector<Place>{kInf, Place::finite(2), Place::finite(3)});
    CharPrescription sign;
    sign.at_sigma.emplace(kInf, LocalSquareClass(kInf, 1));
    const auto a = build_character(three, sign);
    CHECK(a.d == -23);
    CHECK(a.q == Integer(23));

    CHECK(build_character(kE, CharPrescription{}).d == 1);

    CharPrescription extra;
    extra.require_extra_prime = true;
    CHECK(build_character(kE, extra).d == 17);

    CharPrescription mixed;
    mixed.at_sigma.emplace(Place::finite(2), local_class(Integer(3), Place::finite(2)));
    mixed.ramified = {7, 11};
    const auto b = build_character(three, mixed);
    CHECK(local_class(b.d, Place::finite(2)) == local_class(Integer(3), Place::finite(2)));
    CHECK(local_class(b.d, kInf).is_trivial());
    CHECK(local_class(b.d, Place::finite(3)).is_trivial());
    CHECK(b.d % 77 == 0);
    CHECK(is_squarefree(b.d));

    CharPrescription bad;
    bad.ramified = {3};
    CHECK_THROWS(build_character(three, bad));
    CharPrescription fixed;
    fixed.at_sigma.emplace(kInf, LocalSquareClass(kInf, 1));
    fixed.extra_prime = Integer(5);
    CHECK_THROWS(build_character(three, fixed));
}

TEST_CASE("rank +2 search and chaining") {
    const auto r = find_inc2(kE);
    CHECK(r.r_before == 2);
    CHECK(r.r_after == 4);
    CHECK(r.q % 8 == 1);
    CHECK(four_torsion_rational_at(kE, r.q));
    CHECK(r.alarms.empty());
    const auto second = find_inc2(twist(kE, r.q));
    CHECK(second.r_before == 4);
    CHECK(second.r_after == 6);
    CHECK(rank_of_twist(kE, r.q * second.q) == 6);
    SearchOptions tiny;
    tiny.prime_budget = 3;
    CHECK_THROWS_AS(find_inc2(kE, tiny), PrimeBudgetExceeded);
    for (const auto& c : corpus()) {
        const auto w = find_inc2(c.model);
        CHECK(w.r_after == w.r_before + 2);
    }
}

TEST_CASE("rank +1 search through the real place") {
    const auto r = find_plus_one(kE);
    CHECK(r.masked_rank == 1);
    CHECK(r.r_before == 2);
    CHECK(r.r_after == 3);
    CHECK(r.d < 0);
    for (const auto& c : corpus()) {
        const auto w = find_plus_one(c.model);
        CHECK(w.r_after == w.r_before + 1);
        CHECK(w.masked_rank + 1 == w.r_before);
    }
}

TEST_CASE("scan order, records and summary") {
    const auto order = scan_order(1, 6);
    std::vector<long> got;
    for (const auto& d : order) got.push_back(d.get_si());
    CHECK(got == std::vector<long>{1, -1, 2, -2, 3, -3, 5, -5, 6, -6});

    std::vector<TwistRecord> seq, par;
    ScanOptions o;
    o.bound = 100;
    scan(kE, o, [&](const TwistRecord& r) { seq.push_back(r); });
    o.parallel = 4;
    scan(kE, o, [&](const TwistRecord& r) { par.push_back(r); });
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].d == par[i].d);
        CHECK(seq[i].rank == par[i].rank);
        CHECK(seq[i].ms == 0);
    }
    const auto s = summarize(kE, 100, seq);
    CHECK(s.rank_histogram.count(2));
    CHECK(s.rank_histogram.count(3));
    CHECK(s.t_hat == 2);
    CHECK(s.parity_failures == 0);
    CHECK(s.both_parities);
    CHECK(s.bound_checks.lower);
    CHECK(s.bound_checks.upper_n);
    for (const auto& r : seq)
        if (r.d == -7 || r.d == 17) CHECK(r.rank == (r.d == 17 ? 4U : 3U));
    CHECK_THROWS(scan(kE, ScanOptions{0}, [](const TwistRecord&) {}));
}

TEST_CASE("multiplicative primes") {
    const FullTwoTorsionModel m(0, 5, 1);
    const auto r = multiplicative_h_check(m, 5);
    CHECK(r.v_delta == 2);
    CHECK(r.even);
    CHECK(r.h_unramified == 1);
    CHECK(r.h_trivial == 0);
    CHECK(r.ok);
    CHECK_THROWS_AS(multiplicative_h_check(m, 3), CurveError);
    CHECK_THROWS_AS(multiplicative_h_check(m, 2), CurveError);
}

TEST_CASE("invariant suites pass on the corpus and catch the scaled identification") {
    for (const auto& name : suite_names()) {
        const auto out = run_suite(name, corpus(), 15, 3);
        CHECK_MESSAGE(out.ok(), name);
    }
    SamplingOptions scaled;
    scaled.identification = TwistIdentification::scaled_by_twist;
    CHECK_FALSE(run_suite("parity", corpus(), 60, 1, scaled).ok());
    CHECK_THROWS_AS(run_suite("nope", corpus(), 1, 0), std::invalid_argument);
}
