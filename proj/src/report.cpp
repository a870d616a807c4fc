#include "twosel/report.hpp"

namespace twosel::report {

namespace {

json places(const SigmaSet& s) {
    json out = json::array();
    for (const auto& v : s.places) out.push_back(v.to_string());
    return out;
}

json element(const SelmerElement& e) { return json::array({integer(e.d1), integer(e.d2)}); }

json versioned(json j) {
    j["schema_version"] = kSchemaVersion;
    return j;
}

void check_version(const json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("unsupported schema_version " + j.at("schema_version").dump());
}

}  // namespace

json integer(const Integer& n) {
    if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
    return n.get_str();
}

Integer integer_from(const json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) return Integer(j.get<std::string>());
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

json masks(const std::map<Place, LocalSquareClass>& m) {
    json out = json::object();
    for (const auto& [v, c] : m) out[v.to_string()] = integer(c.representative());
    return out;
}

json selmer(const SelmerResult& r, const std::string& curve, const std::string& model,
            const std::map<Place, LocalSquareClass>& mask_map, const std::optional<Integer>& twist) {
    json basis = json::array();
    for (const auto& b : r.basis) basis.push_back(element(b));
    return versioned({{"curve", curve},
                      {"model", model},
                      {"twist", twist ? integer(*twist) : json(nullptr)},
                      {"masks", masks(mask_map)},
                      {"sigma_prime", places(r.sigma_prime)},
                      {"dim", r.dim},
                      {"basis", basis}});
}

json record(const TwistRecord& r) {
    json j = versioned({{"d", integer(r.d)},
                        {"rank", r.rank},
                        {"parity_lhs", r.parity_lhs},
                        {"parity_rhs", r.parity_rhs},
                        {"sigma_prime", r.sigma_prime_size},
                        {"ms", r.ms}});
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

TwistRecord record_from(const json& j) {
    check_version(j);
    TwistRecord r;
    r.d = integer_from(j.at("d"));
    r.rank = j.at("rank").get<std::size_t>();
    r.parity_lhs = j.at("parity_lhs").get<int>();
    r.parity_rhs = j.at("parity_rhs").get<int>();
    r.sigma_prime_size = j.at("sigma_prime").get<std::size_t>();
    r.ms = j.at("ms").get<double>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
}

json summary(const ScanSummary& s) {
    json hist = json::object();
    for (const auto& [rank, count] : s.rank_histogram) hist[std::to_string(rank)] = count;
    return versioned({{"curve", s.curve},
                      {"bound", s.bound},
                      {"n", s.n},
                      {"records_count", s.records_count},
                      {"rank_histogram", hist},
                      {"t_hat", s.t_hat},
                      {"r_max", s.r_max},
                      {"gaps", s.gaps},
                      {"bound_checks",
                       {{"t_hat_ge_2", s.bound_checks.lower},
                        {"t_hat_le_n_plus_1", s.bound_checks.upper_n1},
                        {"t_hat_le_n", s.bound_checks.upper_n}}},
                      {"parity_failures", s.parity_failures},
                      {"errors", s.errors},
                      {"both_parities", s.both_parities}});
}

ScanSummary summary_from(const json& j) {
    check_version(j);
    ScanSummary s;
    s.curve = j.at("curve").get<std::string>();
    s.bound = j.at("bound").get<std::uint64_t>();
    s.n = j.at("n").get<std::size_t>();
    s.records_count = j.at("records_count").get<std::size_t>();
    for (const auto& [k, v] : j.at("rank_histogram").items()) s.rank_histogram[std::stoul(k)] = v.get<std::size_t>();
    s.t_hat = j.at("t_hat").get<std::size_t>();
    s.r_max = j.at("r_max").get<std::size_t>();
    s.gaps = j.at("gaps").get<std::vector<std::size_t>>();
    const auto& b = j.at("bound_checks");
    s.bound_checks = {b.at("t_hat_ge_2").get<bool>(), b.at("t_hat_le_n_plus_1").get<bool>(), b.at("t_hat_le_n").get<bool>()};
    s.parity_failures = j.at("parity_failures").get<std::size_t>();
    s.errors = j.at("errors").get<std::size_t>();
    s.both_parities = j.at("both_parities").get<bool>();
    return s;
}

json inc2(const Inc2Result& r, const std::string& curve) {
    return versioned({{"kind", "inc2"},
                      {"curve", curve},
                      {"q", integer(r.q)},
                      {"r_before", r.r_before},
                      {"r_after", r.r_after},
                      {"primes_examined", r.primes_examined},
                      {"conditions", {"q = 1 mod 8 and mod every odd p in Sigma", "Selmer basis split at q",
                                      "E[4] rational over Q_q"}},
                      {"alarms", r.alarms}});
}

json plus_one(const PlusOneResult& r, const std::string& curve) {
    return versioned({{"kind", "plus-one"},
                      {"curve", curve},
                      {"d", integer(r.d)},
                      {"q", integer(r.q)},
                      {"r_before", r.r_before},
                      {"r_after", r.r_after},
                      {"masked_rank_sign_at_inf", r.masked_rank},
                      {"candidates", r.candidates}});
}

json duality(const DualityReport& r) {
    json j = {{"ok", r.ok},
              {"dim_selmer", r.dim_selmer},
              {"dim_strict", r.dim_strict},
              {"dim_relaxed", r.dim_relaxed},
              {"expected_gap", r.expected_gap},
              {"relaxed_image_dim", r.relaxed_image_dim},
              {"selmer_image_dim", r.selmer_image_dim},
              {"orthogonal", r.orthogonal}};
    if (r.counterexample) j["counterexample"] = {element(r.counterexample->first), element(r.counterexample->second)};
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

json collapse(const CollapseResult& r) {
    json primes = json::array();
    for (const auto& q : r.primes) primes.push_back(integer(q));
    return {{"n", r.n},
            {"k", r.k},
            {"dim_before", r.dim_before},
            {"dim_after", r.dim_after},
            {"directions", r.directions},
            {"primes", primes},
            {"masks", masks(r.masks)}};
}

json multiplicative(const MultiplicativeReport& r) {
    json j = {{"prime", integer(r.prime)},
              {"v_delta", r.v_delta},
              {"even", r.even},
              {"h_unramified", r.h_unramified},
              {"h_trivial", r.h_trivial},
              {"ok", r.ok}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

}  // namespace twosel::report
