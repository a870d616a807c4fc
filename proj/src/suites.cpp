#include "twosel/suites.hpp"

#include <algorithm>
#include <random>

namespace twosel {

namespace {

using report::json;

const std::vector<int> kSmallPrimes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_); }

    Integer squarefree(std::uint64_t bound) {
        for (;;) {
            Integer d(static_cast<unsigned long>(uniform(1, bound)));
            if (!is_squarefree(d)) continue;
            return uniform(0, 1) ? Integer(-d) : d;
        }
    }

    Integer good_prime(const SigmaSet& sigma, std::uint64_t bound) {
        for (;;) {
            const Integer q = next_prime(Integer(static_cast<unsigned long>(uniform(2, bound))));
            if (!sigma.contains(Place::finite(q))) return q;
        }
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[uniform(0, v.size() - 1)];
    }

private:
    std::mt19937_64 rng_;
};

std::vector<Place> place_pool(const FullTwoTorsionModel& model) {
    std::set<Place> pool;
    for (const auto& v : sigma_set(model).places) pool.insert(v);
    for (int p : kSmallPrimes) pool.insert(Place::finite(p));
    return {pool.begin(), pool.end()};
}

struct Trial {
    bool pass = false;
    json detail;
};

Trial parity_trial(const CorpusCurve& c, std::size_t r0, Draw& draw, const SamplingOptions& opts) {
    const Integer d = draw.squarefree(10'000);
    const std::size_t r = rank_of_twist(c.model, d, opts);
    const std::size_t direct = rank_of_twist_direct(c.model, d, opts);
    const auto p = parity_check(c.model, d, r0, r, opts);
    return {p.equal && r == direct,
            {{"curve", c.input}, {"d", report::integer(d)}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"rank", r}, {"rank_direct", direct}}};
}

Trial duality_trial(const CorpusCurve& c, Draw& draw, const SamplingOptions& opts) {
    const Integer d = draw.squarefree(50);
    SelmerSpec spec(twist(c.model, d));
    spec.sampling = opts;
    auto pool = place_pool(spec.model);
    std::set<Place> T;
    const std::size_t size = draw.uniform(1, 2);
    while (T.size() < size) T.insert(draw.pick(pool));
    const auto rep = duality_check(spec, T);
    json places = json::array();
    for (const auto& v : T) places.push_back(v.to_string());
    return {rep.ok, {{"curve", c.input}, {"d", report::integer(d)}, {"T", places}, {"report", report::duality(rep)}}};
}

Trial isotropy_trial(const CorpusCurve& c, Draw& draw, const SamplingOptions& opts) {
    const Integer d = draw.squarefree(50);
    const auto model = twist(c.model, d);
    const Place v = draw.pick(place_pool(model));
    const LocalSquareClass cls = draw.pick(all_classes(v));
    const auto image = kummer_image(model, cls, opts);
    const bool pass = is_isotropic(image) && image.dim() == v.width() &&
                      static_cast<int>(image.dim()) == expected_local_dim(model, cls);
    return {pass, {{"curve", c.input}, {"d", report::integer(d)}, {"place", v.to_string()}, {"class", cls.to_string()}, {"dim", image.dim()}}};
}

Trial ramhv_trial(const CorpusCurve& c, Draw& draw, const SamplingOptions& opts) {
    const Integer q = draw.good_prime(sigma_set(c.model), 10'000);
    const Place v = Place::finite(q);
    const LocalSquareClass cls(v, draw.uniform(0, 1) ? 3 : 1);
    const auto meet = intersect(kummer_image(c.model, LocalSquareClass::trivial(v), opts), kummer_image(c.model, cls, opts));
    const int h = h_v(c.model, cls, opts);
    return {meet.dim() == 0 && h == 2,
            {{"curve", c.input}, {"q", report::integer(q)}, {"class", cls.to_string()}, {"intersection_dim", meet.dim()}, {"h", h}}};
}

Trial babo_trial(const CorpusCurve& c, Draw& draw, const SamplingOptions& opts) {
    const Integer d = draw.squarefree(2'000);
    auto masks = twist_masks(c.model, d);
    std::set<Place> candidates;
    for (const auto& v : place_pool(c.model)) candidates.insert(v);
    for (const auto& [v, cls] : masks) candidates.insert(v);
    const Place v = draw.pick(std::vector<Place>(candidates.begin(), candidates.end()));
    const auto current = masks.count(v) ? masks.at(v) : LocalSquareClass::trivial(v);
    std::vector<LocalSquareClass> others;
    for (const auto& cls : all_classes(v))
        if (!(cls == current)) others.push_back(cls);
    const LocalSquareClass flipped = draw.pick(others);

    SelmerSpec before(c.model), after(c.model);
    before.sampling = after.sampling = opts;
    before.masks = masks;
    after.masks = masks;
    after.masks.erase(v);
    if (!flipped.is_trivial()) after.masks.emplace(v, flipped);
    before.extra_places.insert(v);
    after.extra_places.insert(v);
    const auto r1 = selmer_group(before).dim, r2 = selmer_group(after).dim;
    const auto cap = kummer_image(c.model, LocalSquareClass::trivial(v), opts).dim();
    const std::size_t diff = r1 > r2 ? r1 - r2 : r2 - r1;
    return {diff <= cap,
            {{"curve", c.input}, {"d", report::integer(d)}, {"place", v.to_string()}, {"from", current.to_string()},
             {"to", flipped.to_string()}, {"ranks", {r1, r2}}, {"dim_alpha", cap}}};
}

}  // namespace

const std::vector<CorpusCurve>& corpus() {
    static const std::vector<CorpusCurve> c{{"-1,0,1", FullTwoTorsionModel(-1, 0, 1)},
                                            {"0,1,2", FullTwoTorsionModel(0, 1, 2)},
                                            {"0,5,1", FullTwoTorsionModel(0, 5, 1)}};
    return c;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"parity", "duality", "isotropy", "ramhv", "babo"};
    return names;
}

json SuiteOutcome::to_json() const {
    json j = {{"schema_version", report::kSchemaVersion},
              {"suite", suite},
              {"trials", trials},
              {"passed", passed},
              {"failed", trials - passed}};
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
}

SuiteOutcome run_suite(const std::string& name, const std::vector<CorpusCurve>& curves, std::size_t trials,
                       std::uint64_t seed, const SamplingOptions& opts) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw std::invalid_argument("unknown suite: " + name);
    if (curves.empty()) throw std::invalid_argument("no curves to verify");
    SuiteOutcome out;
    out.suite = name;
    out.trials = trials;
    Draw draw(seed);
    std::vector<std::size_t> base;
    for (const auto& c : curves) base.push_back(name == "parity" ? rank_of_twist(c.model, 1, opts) : 0);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto& c = curves[i % curves.size()];
        Trial t;
        if (name == "parity") t = parity_trial(c, base[i % curves.size()], draw, opts);
        else if (name == "duality") t = duality_trial(c, draw, opts);
        else if (name == "isotropy") t = isotropy_trial(c, draw, opts);
        else if (name == "ramhv") t = ramhv_trial(c, draw, opts);
        else t = babo_trial(c, draw, opts);
        if (t.pass) ++out.passed;
        else if (!out.counterexample) out.counterexample = t.detail;
    }
    return out;
}

}  // namespace twosel
