#include "twosel/twist_lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace twosel {

namespace {

std::size_t masked_rank(const FullTwoTorsionModel& model, std::map<Place, LocalSquareClass> masks,
                        const SamplingOptions& opts) {
    SelmerSpec spec(model);
    spec.masks = std::move(masks);
    spec.sampling = opts;
    return selmer_group(spec).dim;
}

std::size_t base_rank(const FullTwoTorsionModel& model, const SamplingOptions& opts) {
    return masked_rank(model, {}, opts);
}

bool skip_prime(const Integer& q, const SigmaSet& sigma, const std::set<Integer>& avoid) {
    return q == 2 || sigma.contains(Place::finite(q)) || avoid.count(q);
}

}  // namespace

std::map<Place, LocalSquareClass> twist_masks(const FullTwoTorsionModel& model, const Integer& d) {
    if (d == 0 || !is_squarefree(d)) throw CurveError("twist parameter must be squarefree and nonzero, got " + d.get_str());
    std::set<Place> places;
    for (const auto& v : sigma_set(model).places) places.insert(v);
    for (const auto& [p, e] : factorize(d).factors) places.insert(Place::finite(p));
    std::map<Place, LocalSquareClass> masks;
    for (const auto& v : places) {
        auto c = local_class(d, v);
        if (!c.is_trivial()) masks.emplace(v, c);
    }
    return masks;
}

std::size_t rank_of_twist(const FullTwoTorsionModel& model, const Integer& d, const SamplingOptions& opts) {
    return masked_rank(model, twist_masks(model, d), opts);
}

std::size_t rank_of_twist_direct(const FullTwoTorsionModel& model, const Integer& d, const SamplingOptions& opts) {
    SelmerSpec spec(twist(model, d));
    spec.sampling = opts;
    return selmer_group(spec).dim;
}

ParityResult parity_check(const FullTwoTorsionModel& model, const Integer& d, std::size_t rank_base,
                          std::size_t rank_twist, const SamplingOptions& opts) {
    ParityResult r;
    r.lhs = static_cast<int>((rank_base + rank_twist) & 1U);
    for (const auto& [v, c] : twist_masks(model, d)) r.rhs ^= h_v(model, c, opts) & 1;
    r.equal = r.lhs == r.rhs;
    return r;
}

ParityResult parity_check(const FullTwoTorsionModel& model, const Integer& d, const SamplingOptions& opts) {
    return parity_check(model, d, base_rank(model, opts), rank_of_twist(model, d, opts), opts);
}

std::optional<Integer> solve_character(const SigmaSet& sigma, const CharPrescription& pres) {
    for (const auto& [v, c] : pres.at_sigma) {
        if (!sigma.contains(v)) throw std::invalid_argument("prescribed place " + v.to_string() + " is outside Sigma");
        if (!(c.place() == v)) throw std::invalid_argument("class at " + v.to_string() + " lives elsewhere");
    }
    Integer fixed = 1;
    for (const auto& t : pres.ramified) {
        if (!is_probable_prime(t) || sigma.contains(Place::finite(t)))
            throw std::invalid_argument("ramified set must hold primes outside Sigma, got " + t.get_str());
        fixed *= t;
    }
    if (pres.extra_prime) {
        const Integer& q = *pres.extra_prime;
        if (!is_probable_prime(q) || sigma.contains(Place::finite(q)) || pres.ramified.count(q))
            throw std::invalid_argument("extra prime must lie outside Sigma and T, got " + q.get_str());
        fixed *= q;
    }

    const auto gens = GlobalClassBasis::from_sigma(sigma);
    const std::size_t m = gens.size();
    gf2::Rows rows;
    std::vector<int> rhs;
    for (const auto& v : sigma.places) {
        auto it = pres.at_sigma.find(v);
        const LocalSquareClass target = it == pres.at_sigma.end() ? LocalSquareClass::trivial(v) : it->second;
        const LocalSquareClass offset = local_class(fixed, v);
        std::vector<LocalSquareClass> cls;
        for (const auto& g : gens.generators) cls.push_back(local_class(g, v));
        for (std::size_t t = 0; t < v.width(); ++t) {
            gf2::BitVector row(m);
            for (std::size_t j = 0; j < m; ++j) row.set(j, cls[j].bit(t));
            rows.push_back(std::move(row));
            rhs.push_back(target.bit(t) ^ offset.bit(t));
        }
    }
    gf2::BitVector b(rows.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) b.set(i, rhs[i]);
    const auto x0 = gf2::solve(rows, b, m);
    if (!x0) return std::nullopt;

    // Smallest |d| over the coset, ties to the positive value.
    const auto kernel = gf2::nullspace(rows, m);
    if (kernel.size() > 16) throw std::logic_error("solve_character: kernel unexpectedly large");
    std::optional<Integer> best;
    for (std::uint32_t mask = 0; mask < (1U << kernel.size()); ++mask) {
        gf2::BitVector x = *x0;
        for (std::size_t i = 0; i < kernel.size(); ++i)
            if ((mask >> i) & 1U) x ^= kernel[i];
        const Integer d = GlobalSquareClass{x}.value(gens) * fixed;
        if (!best || abs(d) < abs(*best) || (abs(d) == abs(*best) && d > *best)) best = d;
    }
    return best;
}

CharacterResult build_character(const FullTwoTorsionModel& model, const CharPrescription& pres,
                                const SearchOptions& opts) {
    const SigmaSet sigma = sigma_set(model);
    CharacterResult out;
    if (pres.extra_prime) {
        auto d = solve_character(sigma, pres);
        if (!d) throw std::invalid_argument("prescription is inconsistent with q = " + pres.extra_prime->get_str());
        out.d = *d;
        out.q = pres.extra_prime;
        return out;
    }
    if (!pres.require_extra_prime) {
        if (auto d = solve_character(sigma, pres)) {
            out.d = *d;
            return out;
        }
    }
    Integer q = 2;
    CharPrescription with_q = pres;
    for (;;) {
        q = next_prime(q);
        if (skip_prime(q, sigma, pres.ramified)) continue;
        if (++out.primes_examined > opts.prime_budget)
            throw PrimeBudgetExceeded("build_character: prime budget exhausted at q = " + q.get_str());
        with_q.extra_prime = q;
        if (auto d = solve_character(sigma, with_q)) {
            out.d = *d;
            out.q = q;
            return out;
        }
    }
}

Inc2Result find_inc2(const FullTwoTorsionModel& model, const SearchOptions& opts) {
    const SigmaSet sigma = sigma_set(model);
    SelmerSpec spec(model);
    spec.sampling = opts.sampling;
    const auto sel = selmer_group(spec);
    std::set<Integer> betas;
    for (const auto& s : sel.basis) {
        betas.insert(s.d1);
        betas.insert(s.d2);
    }
    Integer theta = 8;
    for (const auto& p : sigma.finite_primes())
        if (p != 2) theta *= p;

    Inc2Result out;
    out.r_before = sel.dim;
    Integer q = 2;
    for (;;) {
        q = next_prime(q);
        if (skip_prime(q, sigma, {})) continue;
        if (++out.primes_examined > opts.prime_budget)
            throw PrimeBudgetExceeded("find_inc2: prime budget exhausted at q = " + q.get_str());
        if (Integer(q % theta) != 1) continue;
        bool split = true;
        for (const auto& b : betas) split = split && legendre(b, q) == 1;
        if (!split || !four_torsion_rational_at(model, q)) continue;
        const std::size_t r = rank_of_twist(model, q, opts.sampling);
        if (r == out.r_before + 2) {
            out.q = q;
            out.r_after = r;
            return out;
        }
        out.alarms.push_back("soundness alarm: q = " + q.get_str() + " meets every condition but gives rank " +
                             std::to_string(r));
    }
}

PlusOneResult find_plus_one(const FullTwoTorsionModel& model, const SearchOptions& opts) {
    const SigmaSet sigma = sigma_set(model);
    PlusOneResult out;
    out.r_before = base_rank(model, opts.sampling);
    const LocalSquareClass sign(Place::infinity(), 1);
    out.masked_rank = masked_rank(model, {{Place::infinity(), sign}}, opts.sampling);
    if (out.masked_rank + 1 != out.r_before) {
        throw std::logic_error("find_plus_one: masked rank " + std::to_string(out.masked_rank) + " is not r - 1 = " +
                               std::to_string(out.r_before) + " - 1");
    }
    CharPrescription pres;
    pres.at_sigma.emplace(Place::infinity(), sign);
    Integer q = 2;
    std::uint64_t examined = 0;
    for (;;) {
        q = next_prime(q);
        if (skip_prime(q, sigma, {})) continue;
        if (++examined > opts.prime_budget)
            throw PrimeBudgetExceeded("find_plus_one: prime budget exhausted at q = " + q.get_str());
        pres.extra_prime = q;
        const auto d = solve_character(sigma, pres);
        if (!d) continue;
        ++out.candidates;
        const std::size_t r = rank_of_twist(model, *d, opts.sampling);
        if (r == out.r_before + 1) {
            out.d = *d;
            out.q = q;
            out.r_after = r;
            return out;
        }
    }
}

std::vector<Integer> scan_order(std::uint64_t start, std::uint64_t bound) {
    std::vector<Integer> out;
    for (std::uint64_t a = std::max<std::uint64_t>(start, 1); a <= bound; ++a) {
        const Integer d(static_cast<unsigned long>(a));
        if (!is_squarefree(d)) continue;
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

void scan(const FullTwoTorsionModel& model, const ScanOptions& opts, const std::function<void(const TwistRecord&)>& sink) {
    if (opts.bound < 1) throw std::invalid_argument("scan: bound must be positive");
    const std::size_t r0 = base_rank(model, opts.sampling);
    const std::size_t sigma_n = sigma_set(model).n();
    const auto order = scan_order(opts.start, opts.bound);

    auto compute = [&](const Integer& d) {
        const auto t0 = std::chrono::steady_clock::now();
        TwistRecord rec;
        rec.d = d;
        try {
            const auto masks = twist_masks(model, d);
            std::set<Place> places;
            for (const auto& v : sigma_set(model).places) places.insert(v);
            for (const auto& [v, c] : masks) places.insert(v);
            rec.sigma_prime_size = places.size();
            rec.rank = masked_rank(model, masks, opts.sampling);
            const auto p = parity_check(model, d, r0, rec.rank, opts.sampling);
            rec.parity_lhs = p.lhs;
            rec.parity_rhs = p.rhs;
        } catch (const std::exception& ex) {
            rec.error = ex.what();
            rec.sigma_prime_size = sigma_n;
        }
        if (opts.timing)
            rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return rec;
    };

    const unsigned workers = std::max(1U, opts.parallel);
    if (workers == 1) {
        for (const auto& d : order) sink(compute(d));
        return;
    }
    // Fixed-size blocks computed by a pool, emitted in order.
    const std::size_t block = 64 * workers;
    std::vector<TwistRecord> results;
    for (std::size_t begin = 0; begin < order.size(); begin += block) {
        const std::size_t end = std::min(order.size(), begin + block);
        results.assign(end - begin, TwistRecord{});
        std::atomic<std::size_t> next{begin};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < end; i = next++) results[i - begin] = compute(order[i]);
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& rec : results) sink(rec);
    }
}

ScanSummary summarize(const FullTwoTorsionModel& model, std::uint64_t bound, const std::vector<TwistRecord>& records) {
    ScanSummary s;
    s.curve = model.to_string();
    s.bound = bound;
    s.n = sigma_set(model).n();
    s.records_count = records.size();
    for (const auto& r : records) {
        if (!r.error.empty()) {
            ++s.errors;
            continue;
        }
        ++s.rank_histogram[r.rank];
        if (r.parity_lhs != r.parity_rhs) ++s.parity_failures;
    }
    if (!s.rank_histogram.empty()) {
        s.t_hat = s.rank_histogram.begin()->first;
        s.r_max = s.rank_histogram.rbegin()->first;
        bool seen[2] = {false, false};
        for (std::size_t r = s.t_hat; r <= s.r_max; ++r) {
            if (s.rank_histogram.count(r)) seen[r & 1U] = true;
            else s.gaps.push_back(r);
        }
        s.both_parities = seen[0] && seen[1];
        s.bound_checks.lower = s.t_hat >= 2;
        s.bound_checks.upper_n1 = s.t_hat <= s.n + 1;
        s.bound_checks.upper_n = s.t_hat <= s.n;
    }
    return s;
}

MultiplicativeReport multiplicative_h_check(const FullTwoTorsionModel& model, const Integer& p,
                                            const SamplingOptions& opts) {
    if (p == 2 || !is_probable_prime(p) || reduction_type(model, p) != Reduction::multiplicative)
        throw CurveError("multiplicative_h_check: " + p.get_str() + " is not an odd prime of multiplicative reduction");
    MultiplicativeReport r;
    r.prime = p;
    r.v_delta = valuation(model.discriminant(), p);
    r.even = r.v_delta % 2 == 0;
    const Place v = Place::finite(p);
    r.h_trivial = h_v(model, LocalSquareClass::trivial(v), opts);
    r.h_unramified = h_v(model, LocalSquareClass(v, 2), opts);
    if (r.even) {
        r.ok = r.h_unramified == 1 && r.h_trivial == 0;
    } else {
        r.note = "odd valuation cannot occur with full rational 2-torsion";
    }
    return r;
}

}  // namespace twosel
