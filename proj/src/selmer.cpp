#include "twosel/selmer.hpp"

#include <algorithm>

namespace twosel {

namespace {

// Local class bits of every generator at v.
std::vector<std::uint8_t> generator_classes(const GlobalClassBasis& gens, const Place& v) {
    std::vector<std::uint8_t> out;
    out.reserve(gens.size());
    for (const auto& g : gens.generators) out.push_back(local_class(g, v).bits());
    return out;
}

LocalCocycle restrict_with(const gf2::BitVector& x, const std::vector<std::uint8_t>& cls, const Place& v) {
    const std::size_t m = cls.size();
    std::uint8_t a = 0, b = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (x.get(j)) a ^= cls[j];
        if (x.get(m + j)) b ^= cls[j];
    }
    return {LocalSquareClass(v, a), LocalSquareClass(v, b)};
}

void validate(const SelmerSpec& spec) {
    for (const auto& [v, c] : spec.masks) {
        if (!(c.place() == v)) throw SelmerError("mask keyed at " + v.to_string() + " lives at " + c.place().to_string());
        if (spec.strict.count(v) || spec.relaxed.count(v))
            throw SelmerError("place " + v.to_string() + " is both masked and strict/relaxed");
    }
    for (const auto& v : spec.strict)
        if (spec.relaxed.count(v)) throw SelmerError("place " + v.to_string() + " is both strict and relaxed");
}

SelmerElement decode(const gf2::BitVector& x, const GlobalClassBasis& gens) {
    const std::size_t m = gens.size();
    return {GlobalSquareClass{x.slice(0, m)}.value(gens), GlobalSquareClass{x.slice(m, m)}.value(gens)};
}

gf2::BitVector restrict_to_set(const gf2::BitVector& x, const GlobalClassBasis& gens, const std::vector<Place>& T) {
    gf2::BitVector out(0);
    for (const auto& v : T) out = out.concat(restrict_to(x, gens, v).to_bits());
    return out;
}

}  // namespace

GlobalClassBasis GlobalClassBasis::from_sigma(const SigmaSet& sigma) {
    GlobalClassBasis b;
    b.generators.push_back(-1);
    for (const auto& p : sigma.finite_primes()) b.generators.push_back(p);
    return b;
}

Integer GlobalSquareClass::value(const GlobalClassBasis& basis) const {
    Integer v = 1;
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (coords.get(j)) v *= basis.generators[j];
    return v;
}

GlobalSquareClass GlobalSquareClass::encode(const Integer& d, const GlobalClassBasis& basis) {
    if (d == 0) throw SelmerError("encode: zero is not a square class");
    gf2::BitVector c(basis.size());
    Integer rest = abs(d);
    if (d < 0) c.set(0);
    for (std::size_t j = 1; j < basis.size(); ++j) {
        const int e = valuation(rest, basis.generators[j]);
        if (e) {
            Integer pe;
            mpz_pow_ui(pe.get_mpz_t(), basis.generators[j].get_mpz_t(), static_cast<unsigned long>(e));
            rest /= pe;
            c.set(j, e & 1);
        }
    }
    if (!mpz_perfect_square_p(rest.get_mpz_t()))
        throw SelmerError("encode: " + d.get_str() + " has support outside S'");
    return {c};
}

SigmaSet SelmerSpec::sigma_prime() const {
    std::set<Place> extra = extra_places;
    for (const auto& [v, c] : masks) extra.insert(v);
    extra.insert(strict.begin(), strict.end());
    extra.insert(relaxed.begin(), relaxed.end());
    return sigma_set(model, extra);
}

LocalCocycle restrict_to(const gf2::BitVector& element, const GlobalClassBasis& generators, const Place& v) {
    return restrict_with(element, generator_classes(generators, v), v);
}

SelmerResult selmer_group(const SelmerSpec& spec) {
    validate(spec);
    SelmerResult out;
    out.sigma_prime = spec.sigma_prime();
    out.generators = GlobalClassBasis::from_sigma(out.sigma_prime);
    const std::size_t m = out.generators.size();
    const std::size_t cols = 2 * m;

    gf2::Rows constraints;
    std::vector<std::pair<Place, LocalImage>> conditions;
    for (const auto& v : out.sigma_prime.places) {
        if (spec.relaxed.count(v)) continue;
        const auto cls = generator_classes(out.generators, v);
        const std::size_t w2 = 2 * v.width();
        // Column j of the restriction map res_v.
        std::vector<gf2::BitVector> columns;
        columns.reserve(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            gf2::BitVector e(cols);
            e.set(j);
            columns.push_back(restrict_with(e, cls, v).to_bits());
        }
        gf2::Rows functionals;
        if (spec.strict.count(v)) {
            for (std::size_t t = 0; t < w2; ++t) {
                gf2::BitVector f(w2);
                f.set(t);
                functionals.push_back(std::move(f));
            }
            conditions.emplace_back(v, LocalImage{v, {}});
        } else {
            auto it = spec.masks.find(v);
            const LocalSquareClass mask = it == spec.masks.end() ? LocalSquareClass::trivial(v) : it->second;
            LocalImage image = kummer_image(spec.model, mask, spec.sampling);
            // Functionals vanishing on alpha_v cut out H^1_v -> H^1_v / alpha_v.
            functionals = gf2::nullspace(image.vectors(), w2);
            conditions.emplace_back(v, std::move(image));
        }
        for (const auto& f : functionals) {
            gf2::BitVector row(cols);
            for (std::size_t j = 0; j < cols; ++j) row.set(j, gf2::dot(f, columns[j]));
            constraints.push_back(std::move(row));
        }
    }

    out.vectors = gf2::nullspace(constraints, cols);
    out.dim = out.vectors.size();
    for (const auto& x : out.vectors) {
        for (const auto& [v, image] : conditions) {
            const LocalCocycle local = restrict_to(x, out.generators, v);
            if (!(image.dim() == 0 ? local.is_zero() : image.contains(local)))
                throw std::logic_error("selmer_group: basis element violates the condition at " + v.to_string());
        }
        out.basis.push_back(decode(x, out.generators));
    }
    return out;
}

StrictRelaxedDims strict_relaxed_dims(const SelmerSpec& spec, const std::set<Place>& T) {
    SelmerSpec strict = spec, relaxed = spec;
    for (const auto& v : T) {
        if (spec.masks.count(v)) throw SelmerError("T meets the mask places at " + v.to_string());
        strict.strict.insert(v);
        relaxed.relaxed.insert(v);
    }
    return {selmer_group(strict).dim, selmer_group(relaxed).dim};
}

DualityReport duality_check(const SelmerSpec& spec, const std::set<Place>& T) {
    DualityReport report;
    SelmerSpec base = spec, strict = spec, relaxed = spec;
    for (const auto& v : T) {
        if (spec.masks.count(v) || spec.strict.count(v) || spec.relaxed.count(v))
            throw SelmerError("T must avoid the mask, strict and relaxed places; clash at " + v.to_string());
        base.extra_places.insert(v);
        strict.strict.insert(v);
        relaxed.relaxed.insert(v);
    }
    const auto sel = selmer_group(base);
    const auto sel_strict = selmer_group(strict);
    const auto sel_relaxed = selmer_group(relaxed);
    report.dim_selmer = sel.dim;
    report.dim_strict = sel_strict.dim;
    report.dim_relaxed = sel_relaxed.dim;

    const std::vector<Place> places(T.begin(), T.end());
    gf2::Rows local_alpha;  // basis of the direct sum of alpha_v over T
    std::size_t offset = 0, total = 0;
    for (const auto& v : places) total += 2 * v.width();
    for (const auto& v : places) {
        const auto image = kummer_image(spec.model, LocalSquareClass::trivial(v), spec.sampling);
        report.expected_gap += image.dim();
        for (const auto& b : image.vectors()) {
            gf2::BitVector row(total);
            for (std::size_t i = 0; i < b.size(); ++i) row.set(offset + i, b.get(i));
            local_alpha.push_back(std::move(row));
        }
        offset += 2 * v.width();
    }

    gf2::Rows relaxed_images, selmer_images;
    for (const auto& x : sel_relaxed.vectors) relaxed_images.push_back(restrict_to_set(x, sel_relaxed.generators, places));
    for (const auto& y : sel.vectors) selmer_images.push_back(restrict_to_set(y, sel.generators, places));

    gf2::Rows with_alpha = local_alpha;
    with_alpha.insert(with_alpha.end(), relaxed_images.begin(), relaxed_images.end());
    report.relaxed_image_dim = gf2::rank(with_alpha) - gf2::rank(local_alpha);
    report.selmer_image_dim = gf2::rank(selmer_images);

    report.orthogonal = true;
    for (std::size_t i = 0; i < sel_relaxed.vectors.size() && report.orthogonal; ++i) {
        for (std::size_t j = 0; j < sel.vectors.size(); ++j) {
            int sum = 0;
            for (const auto& v : places) {
                sum ^= local_pairing(restrict_to(sel_relaxed.vectors[i], sel_relaxed.generators, v),
                                     restrict_to(sel.vectors[j], sel.generators, v));
            }
            if (sum) {
                report.orthogonal = false;
                report.counterexample = std::make_pair(sel_relaxed.basis[i], sel.basis[j]);
                break;
            }
        }
    }

    const bool gap_ok = report.dim_relaxed - report.dim_strict == report.expected_gap;
    const bool complement_ok = report.relaxed_image_dim + report.selmer_image_dim == report.expected_gap;
    report.ok = gap_ok && complement_ok && report.orthogonal;
    if (!gap_ok) report.message = "dimension gap differs from the sum of local dimensions";
    else if (!report.orthogonal) report.message = "restriction images are not orthogonal";
    else if (!complement_ok) report.message = "restriction images are orthogonal but not complementary";
    return report;
}

std::array<int, 2> frobenius_eval(const SelmerElement& element, const Integer& q, const SigmaSet* sigma_prime) {
    if (q == 2 || !is_probable_prime(q)) throw SelmerError("frobenius_eval: q must be an odd prime");
    if (sigma_prime && sigma_prime->contains(Place::finite(q)))
        throw SelmerError("frobenius_eval: q = " + q.get_str() + " lies in S'");
    if (mpz_divisible_p(element.d1.get_mpz_t(), q.get_mpz_t()) || mpz_divisible_p(element.d2.get_mpz_t(), q.get_mpz_t()))
        throw SelmerError("frobenius_eval: element is ramified at q = " + q.get_str());
    return {legendre(element.d1, q) == -1 ? 1 : 0, legendre(element.d2, q) == -1 ? 1 : 0};
}

CollapseResult collapse_masks(const SelmerSpec& spec, const CollapseOptions& opts) {
    const auto sel = selmer_group(spec);
    CollapseResult out;
    out.n = sel.sigma_prime.n();
    out.dim_before = sel.dim;
    if (sel.dim < out.n + 2 || sel.dim > 2 * out.n)
        throw CollapseError("collapse_masks: need dim = n + k with 2 <= k <= n, got dim " + std::to_string(sel.dim) +
                            " and n = " + std::to_string(out.n));
    out.k = sel.dim - out.n;
    const std::size_t m = sel.generators.size();

    // t_i(s) = s(sigma_i) = (i-th bit of d1, i-th bit of d2) on the Selmer basis.
    gf2::Rows stacked;
    std::size_t prev_rank = 0;
    for (std::size_t i = 0; i < m && out.directions.size() < out.k; ++i) {
        gf2::BitVector r1(sel.dim), r2(sel.dim);
        for (std::size_t j = 0; j < sel.dim; ++j) {
            r1.set(j, sel.vectors[j].get(i));
            r2.set(j, sel.vectors[j].get(m + i));
        }
        stacked.push_back(std::move(r1));
        stacked.push_back(std::move(r2));
        const std::size_t r = gf2::rank(stacked);
        if (r == prev_rank + 2) out.directions.push_back(i);
        prev_rank = r;
    }
    if (out.directions.size() < out.k) throw CollapseError("collapse_masks: no surjection onto E[2]^k found");

    std::set<Integer> used;
    for (std::size_t i : out.directions) {
        std::uint64_t examined = 0;
        Integer q = 2;
        for (;;) {
            q = next_prime(q);
            if (++examined > opts.prime_budget) throw PrimeBudgetExceeded("collapse_masks: prime budget exceeded");
            if (sel.sigma_prime.contains(Place::finite(q)) || used.count(q)) continue;
            bool match = true;
            for (std::size_t j = 0; j < m && match; ++j) {
                match = (legendre(sel.generators.generators[j], q) == -1) == (j == i);
            }
            if (match) break;
        }
        used.insert(q);
        out.primes.push_back(q);
        const Place w = Place::finite(q);
        out.masks.emplace(w, LocalSquareClass(w, 1));
    }

    SelmerSpec collapsed = spec;
    for (const auto& [v, c] : out.masks) collapsed.masks.emplace(v, c);
    out.dim_after = selmer_group(collapsed).dim;
    if (out.dim_after + 2 * out.k != out.dim_before)
        throw CollapseError("collapse_masks: soundness alarm, dimension " + std::to_string(out.dim_before) + " -> " +
                            std::to_string(out.dim_after) + " with k = " + std::to_string(out.k));
    return out;
}

}  // namespace twosel
