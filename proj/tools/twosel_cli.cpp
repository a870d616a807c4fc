#include "twosel/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace twosel;
using report::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerify = 2, kBudget = 3 };

struct Config {
    std::string curve;
    std::optional<std::string> twist;
    std::vector<std::string> masks;
    std::uint64_t bound = 0;
    std::string out = "scan";
    bool resume = false;
    bool timing = false;
    unsigned parallel = 1;
    std::string suite;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    std::string kind;
    unsigned chain = 1;
    std::string summary_path;
    std::uint64_t prime_budget = 1'000'000;
    std::size_t sampling_budget = 100'000;
    std::string identification = "canonical";
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

SamplingOptions sampling(const Config& c) {
    SamplingOptions o;
    o.budget = c.sampling_budget;
    if (c.identification == "scaled") o.identification = TwistIdentification::scaled_by_twist;
    else if (c.identification != "canonical") throw UsageError("--identification must be canonical or scaled");
    return o;
}

SearchOptions search_options(const Config& c) { return {c.prime_budget, sampling(c)}; }

FullTwoTorsionModel load_curve(const std::string& text) {
    if (text.empty()) throw UsageError("--curve is required");
    return require_full_two_torsion(parse_curve(text));
}

LocalSquareClass parse_mask_class(const Place& v, const std::string& name) {
    if (name == "trivial") return LocalSquareClass::trivial(v);
    if (name == "sign") {
        if (!v.is_infinite()) throw UsageError("sign mask only exists at inf");
        return {v, 1};
    }
    if (name == "unram") {
        if (v.is_infinite()) throw UsageError("no unramified nontrivial class at inf");
        return {v, static_cast<std::uint8_t>(v.is_two() ? 4 : 2)};
    }
    if (name == "ram") {
        if (v.is_infinite()) throw UsageError("no ramified class at inf");
        return {v, 1};
    }
    try {
        const Integer n(name);
        if (n == 0) throw UsageError("mask class cannot be 0");
        return local_class(n, v);
    } catch (const std::invalid_argument&) {
        throw UsageError("unknown mask class '" + name + "'");
    }
}

std::map<Place, LocalSquareClass> parse_masks(const std::vector<std::string>& raw) {
    std::map<Place, LocalSquareClass> out;
    for (const auto& m : raw) {
        const auto eq = m.find('=');
        if (eq == std::string::npos) throw UsageError("mask must look like place=class, got " + m);
        Place v = Place::infinity();
        try {
            v = Place::parse(m.substr(0, eq));
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
        auto cls = parse_mask_class(v, m.substr(eq + 1));
        out.erase(v);
        if (!cls.is_trivial()) out.emplace(v, cls);
    }
    return out;
}

int cmd_descent(const Config& c) {
    auto model = load_curve(c.curve);
    std::optional<Integer> d;
    if (c.twist) {
        try {
            d = Integer(*c.twist);
        } catch (const std::invalid_argument&) {
            throw UsageError("--twist must be an integer");
        }
        model = twist(model, *d);
    }
    SelmerSpec spec(model);
    spec.masks = parse_masks(c.masks);
    spec.sampling = sampling(c);
    const auto result = selmer_group(spec);
    std::cout << report::selmer(result, c.curve, model.to_string(), spec.masks, d).dump() << "\n";
    return kOk;
}

// Keeps records with |d| <= the checkpointed bound and returns that bound.
std::uint64_t restore(const std::string& records_path, const std::string& checkpoint_path, const std::string& curve,
                      std::uint64_t bound) {
    std::ifstream cp(checkpoint_path);
    if (!cp) return 0;
    const json state = json::parse(cp);
    if (state.at("curve").get<std::string>() != curve || state.at("bound").get<std::uint64_t>() != bound)
        throw UsageError("checkpoint " + checkpoint_path + " belongs to a different scan");
    const auto done = state.at("last_complete").get<std::uint64_t>();
    std::vector<std::string> keep;
    std::ifstream in(records_path);
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        if (abs(report::record_from(json::parse(line)).d) <= done) keep.push_back(line);
    }
    in.close();
    std::ofstream outf(records_path, std::ios::trunc);
    for (const auto& l : keep) outf << l << "\n";
    return done;
}

void write_checkpoint(const std::string& path, const std::string& curve, std::uint64_t bound, std::uint64_t done) {
    std::ofstream cp(path, std::ios::trunc);
    cp << json{{"schema_version", report::kSchemaVersion}, {"curve", curve}, {"bound", bound}, {"last_complete", done}}.dump()
       << "\n";
}

int cmd_scan(const Config& c) {
    if (c.bound < 1) throw UsageError("--bound must be at least 1");
    const auto model = load_curve(c.curve);
    const std::string records_path = c.out + ".jsonl";
    const std::string summary_path = c.out + ".summary.json";
    const std::string checkpoint_path = c.out + ".checkpoint.json";

    std::uint64_t done = 0;
    if (c.resume) done = restore(records_path, checkpoint_path, c.curve, c.bound);
    std::ofstream records(records_path, done ? std::ios::app : std::ios::trunc);
    if (!records) throw std::runtime_error("cannot write " + records_path);

    ScanOptions opts;
    opts.bound = c.bound;
    opts.start = done + 1;
    opts.parallel = c.parallel;
    opts.timing = c.timing;
    opts.sampling = sampling(c);
    constexpr std::uint64_t kCheckpointEvery = 256;
    std::uint64_t last_abs = done;
    if (opts.start <= c.bound) {
        scan(model, opts, [&](const TwistRecord& r) {
            records << report::record(r).dump() << "\n";
            // Negative d closes its |d| block.
            if (r.d < 0) {
                last_abs = Integer(abs(r.d)).get_ui();
                if (last_abs % kCheckpointEvery == 0) {
                    records.flush();
                    write_checkpoint(checkpoint_path, c.curve, c.bound, last_abs);
                }
            }
        });
    }
    records.close();
    write_checkpoint(checkpoint_path, c.curve, c.bound, c.bound);

    std::vector<TwistRecord> all;
    std::ifstream in(records_path);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) all.push_back(report::record_from(json::parse(line)));
    auto s = summarize(model, c.bound, all);
    s.curve = c.curve;
    const std::string doc = report::summary(s).dump(2);
    std::ofstream(summary_path, std::ios::trunc) << doc << "\n";
    std::cout << doc << "\n";
    const bool ok = s.parity_failures == 0 && s.errors == 0 && s.bound_checks.lower && s.bound_checks.upper_n1 &&
                    s.bound_checks.upper_n;
    return ok ? kOk : kVerify;
}

int cmd_verify(const Config& c) {
    std::vector<CorpusCurve> curves;
    if (c.curve.empty()) curves = corpus();
    else curves.push_back({c.curve, load_curve(c.curve)});
    SuiteOutcome outcome;
    try {
        outcome = run_suite(c.suite, curves, c.trials, c.seed, sampling(c));
    } catch (const std::invalid_argument& ex) {
        if (std::string(ex.what()).rfind("unknown suite", 0) == 0) throw UsageError(ex.what());
        throw;
    }
    std::cout << outcome.to_json().dump() << "\n";
    std::cerr << outcome.suite << ": " << outcome.passed << "/" << outcome.trials << " pass\n";
    return outcome.ok() ? kOk : kVerify;
}

int cmd_search(const Config& c) {
    const auto model = load_curve(c.curve);
    const auto opts = search_options(c);
    if (c.kind == "inc2") {
        auto current = model;
        json steps = json::array();
        bool ok = true;
        Integer d = 1;
        for (unsigned i = 0; i < c.chain; ++i) {
            const auto r = find_inc2(current, opts);
            d *= r.q;
            json step = report::inc2(r, current.to_string());
            step["cumulative_twist"] = report::integer(d);
            steps.push_back(step);
            ok = ok && r.alarms.empty() && r.r_after == r.r_before + 2;
            current = twist(current, r.q);
        }
        json out = c.chain == 1 ? steps[0] : json{{"schema_version", report::kSchemaVersion}, {"kind", "inc2-chain"}, {"curve", c.curve}, {"steps", steps}};
        if (c.chain == 1) out["curve"] = c.curve;
        std::cout << out.dump() << "\n";
        return ok ? kOk : kVerify;
    }
    if (c.kind == "plus-one") {
        const auto r = find_plus_one(model, opts);
        std::cout << report::plus_one(r, c.curve).dump() << "\n";
        return r.r_after == r.r_before + 1 && r.d < 0 ? kOk : kVerify;
    }
    throw UsageError("search kind must be inc2 or plus-one");
}

int cmd_bound(const Config& c) {
    std::ifstream in(c.summary_path);
    if (!in) throw UsageError("cannot read summary " + c.summary_path);
    const auto s = report::summary_from(json::parse(in));
    const auto model = load_curve(s.curve);
    const auto sigma = sigma_set(model);
    std::size_t max_masked = 0;
    json worst;
    for (const auto& v : sigma.places) {
        for (const auto& cls : all_classes(v)) {
            SelmerSpec spec(model);
            spec.sampling = sampling(c);
            if (!cls.is_trivial()) spec.masks.emplace(v, cls);
            const auto dim = selmer_group(spec).dim;
            if (dim >= max_masked) {
                max_masked = dim;
                worst = cls.to_string();
            }
        }
    }
    const bool masked_ok = max_masked <= 2 * s.n;
    const bool ok = s.bound_checks.lower && s.bound_checks.upper_n1 && s.bound_checks.upper_n && masked_ok;
    json out = {{"schema_version", report::kSchemaVersion},
                {"curve", s.curve},
                {"n", s.n},
                {"cap_2n", 2 * s.n},
                {"t_hat", s.t_hat},
                {"t_hat_ge_2", s.bound_checks.lower},
                {"t_hat_le_n_plus_1", s.bound_checks.upper_n1},
                {"t_hat_le_n", s.bound_checks.upper_n},
                {"max_single_place_masked_rank", max_masked},
                {"max_attained_at", worst},
                {"masked_le_2n", masked_ok}};
    std::cout << out.dump(2) << "\n";
    return ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-Selmer ranks of quadratic twists of curves with full rational 2-torsion"};
    app.require_subcommand(1);
    Config c;

    auto add_budgets = [&](CLI::App* sub) {
        sub->add_option("--sampling-budget", c.sampling_budget, "local image samples per place")->check(CLI::PositiveNumber);
        sub->add_option("--identification", c.identification, "canonical or scaled (diagnostic)");
    };

    auto* descent = app.add_subcommand("descent", "Selmer group of a curve, a twist or a masked variant");
    descent->add_option("--curve", c.curve, "e1,e2,e3 or [a1,a2,a3,a4,a6]")->required();
    descent->add_option("--twist", c.twist, "squarefree twist parameter");
    descent->add_option("--mask", c.masks, "place=class with class sign|trivial|unram|ram|integer");
    add_budgets(descent);

    auto* scan_cmd = app.add_subcommand("scan", "ranks of all squarefree twists with |d| <= bound");
    scan_cmd->add_option("--curve", c.curve)->required();
    scan_cmd->add_option("--bound", c.bound)->required();
    scan_cmd->add_option("--out", c.out, "output prefix for .jsonl, .summary.json, .checkpoint.json");
    scan_cmd->add_flag("--resume", c.resume);
    scan_cmd->add_flag("--timing", c.timing, "record wall time per twist (breaks byte-identical reruns)");
    scan_cmd->add_option("--parallel", c.parallel)->check(CLI::PositiveNumber);
    add_budgets(scan_cmd);

    auto* verify = app.add_subcommand("verify", "seeded invariant suites");
    verify->add_option("suite", c.suite, "parity|duality|isotropy|ramhv|babo")->required();
    verify->add_option("--curve", c.curve, "defaults to the built-in corpus");
    verify->add_option("--trials", c.trials)->check(CLI::PositiveNumber);
    verify->add_option("--seed", c.seed);
    add_budgets(verify);

    auto* search = app.add_subcommand("search", "constructive twist searches");
    search->add_option("kind", c.kind, "inc2|plus-one")->required();
    search->add_option("--curve", c.curve)->required();
    search->add_option("--chain", c.chain, "repeat inc2 on the returned twist")->check(CLI::PositiveNumber);
    search->add_option("--prime-budget", c.prime_budget)->check(CLI::PositiveNumber);
    add_budgets(search);

    auto* bound = app.add_subcommand("bound", "t_hat and masked-rank bounds from a scan summary");
    bound->add_option("--summary", c.summary_path)->required();
    add_budgets(bound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*descent) return cmd_descent(c);
        if (*scan_cmd) return cmd_scan(c);
        if (*verify) return cmd_verify(c);
        if (*search) return cmd_search(c);
        if (*bound) return cmd_bound(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CurveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PrimeBudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const SamplingBudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const FactorizationBudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerify;
    }
    return kUsage;
}
