#include "twosel/report.hpp"

#include <doctest.h>

using namespace twosel;

TEST_CASE("integers serialize as numbers or strings") {
    CHECK(report::integer(-23).is_number_integer());
    const Integer big("123456789012345678901234567890");
    CHECK(report::integer(big).is_string());
    CHECK(report::integer_from(report::integer(big)) == big);
    CHECK(report::integer_from(report::integer(-23)) == -23);
    CHECK_THROWS(report::integer_from(report::json(1.5)));
}

TEST_CASE("twist records round-trip") {
    TwistRecord r;
    r.d = Integer("-99999999999999999999");
    r.rank = 5;
    r.sigma_prime_size = 4;
    r.parity_lhs = 1;
    r.parity_rhs = 1;
    r.ms = 0.25;
    const auto line = report::record(r).dump();
    const auto back = report::record_from(report::json::parse(line));
    CHECK(back.d == r.d);
    CHECK(back.rank == 5);
    CHECK(back.sigma_prime_size == 4);
    CHECK(back.ms == 0.25);
    CHECK(report::record(back).dump() == line);
    r.error = "boom";
    CHECK(report::record_from(report::record(r)).error == "boom");
    auto wrong = report::record(r);
    wrong["schema_version"] = 99;
    CHECK_THROWS(report::record_from(wrong));
}

TEST_CASE("scan summaries round-trip") {
    std::vector<TwistRecord> recs;
    for (int d : {1, -1, 2, -2}) {
        TwistRecord r;
        r.d = d;
        r.rank = d > 0 ? 2 : 4;
        recs.push_back(r);
    }
    const auto s = summarize(FullTwoTorsionModel(-1, 0, 1), 2, recs);
    CHECK(s.gaps == std::vector<std::size_t>{3});
    const auto doc = report::summary(s);
    CHECK(report::summary(report::summary_from(doc)) == doc);
}

TEST_CASE("selmer documents") {
    const FullTwoTorsionModel e(-1, 0, 1);
    SelmerSpec spec(e);
    spec.masks.emplace(Place::infinity(), LocalSquareClass(Place::infinity(), 1));
    const auto doc = report::selmer(selmer_group(spec), "-1,0,1", e.to_string(), spec.masks, std::nullopt);
    CHECK(doc.at("dim") == 1);
    CHECK(doc.at("masks").at("inf") == -1);
    CHECK(doc.at("sigma_prime") == report::json::array({"inf", "2"}));
    CHECK(doc.at("basis") == report::json::parse("[[2,1]]"));
    CHECK(doc.at("schema_version") == report::kSchemaVersion);
}
