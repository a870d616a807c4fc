#include "twosel/local_descent.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace twosel {

namespace {

struct CacheKey {
    std::array<Integer, 3> roots;
    Place place;
    std::uint8_t bits;
    TwistIdentification identification;

    bool operator<(const CacheKey& o) const {
        return std::tie(roots, place, bits, identification) < std::tie(o.roots, o.place, o.bits, o.identification);
    }
};

struct Cache {
    std::shared_mutex mu;
    std::map<CacheKey, LocalImage> images;
};

Cache& cache() {
    static Cache c;
    return c;
}

std::uint8_t class_bits(const Integer& n, const Place& v) { return local_class(n, v).bits(); }

class SpanBuilder {
public:
    SpanBuilder(Place v, int target) : place_(std::move(v)), target_(target) {}

    bool full() const { return static_cast<int>(basis_.size()) >= target_; }

    void add(const LocalCocycle& c) {
        if (full() || c.is_zero()) return;
        auto bits = c.to_bits();
        if (gf2::in_span(bits, rows_)) return;
        rows_.push_back(std::move(bits));
        basis_.push_back(c);
    }

    LocalImage finish() && { return LocalImage{place_, std::move(basis_)}; }

private:
    Place place_;
    int target_;
    gf2::Rows rows_;
    std::vector<LocalCocycle> basis_;
};

LocalImage sample_image(const FullTwoTorsionModel& model, const LocalSquareClass& d_v, const SamplingOptions& opts) {
    const Place& v = d_v.place();
    const Integer r = d_v.representative();
    const auto& e = model.roots();
    const std::array<Integer, 3> f{r * e[0], r * e[1], r * e[2]};
    const LocalSquareClass shift =
        opts.identification == TwistIdentification::scaled_by_twist ? local_class(r, v) : LocalSquareClass::trivial(v);
    auto adjust = [&](LocalCocycle c) { return LocalCocycle{c.first * shift, c.second * shift}; };

    SpanBuilder span(v, expected_local_dim(model, d_v));
    for (const auto& t : torsion_images(f, v)) span.add(adjust(t));
    if (span.full()) return std::move(span).finish();

    // x = N / P^(2j) ranges over a ladder u P^k around 0 and the three roots;
    // f(x) is a square in Q_v iff the classes of N - f_i P^(2j) sum to zero.
    const Integer base = v.is_infinite() ? Integer(2) : v.prime();
    const bool odd = !v.is_infinite() && !v.is_two();
    const unsigned long spread = odd ? std::min<unsigned long>(2 * base.get_ui(), 512) : 32;
    constexpr unsigned max_scale = 6;
    constexpr unsigned max_step = 12;
    std::size_t samples = 0;
    Integer scale = 1, step, n;
    std::array<Integer, 3> a;
    for (unsigned j = 0; j <= max_scale; ++j, scale *= base * base) {
        const std::array<Integer, 4> centers{Integer(0), f[0] * scale, f[1] * scale, f[2] * scale};
        step = 1;
        for (unsigned k = 0; k <= max_step; ++k, step *= base) {
            for (const auto& c : centers) {
                for (unsigned long u = 1; u <= spread; ++u) {
                    for (int sign : {1, -1}) {
                        if (++samples > opts.budget) {
                            throw SamplingBudgetExceeded("kummer_image: sampling budget exhausted at " + v.to_string() +
                                                         " for curve " + model.to_string());
                        }
                        n = c + sign * step * u;
                        bool degenerate = false;
                        for (std::size_t i = 0; i < 3; ++i) {
                            a[i] = n - f[i] * scale;
                            if (a[i] == 0) degenerate = true;
                        }
                        if (degenerate) continue;
                        const auto c1 = class_bits(a[0], v), c2 = class_bits(a[1], v), c3 = class_bits(a[2], v);
                        if ((c1 ^ c2 ^ c3) != 0) continue;
                        span.add(adjust(LocalCocycle{LocalSquareClass(v, c1), LocalSquareClass(v, c2)}));
                        if (span.full()) return std::move(span).finish();
                    }
                }
            }
        }
    }
    throw SamplingBudgetExceeded("kummer_image: sample ladder exhausted at " + v.to_string() + " for curve " +
                                 model.to_string());
}

}  // namespace

gf2::Rows LocalImage::vectors() const {
    gf2::Rows rows;
    for (const auto& c : basis) rows.push_back(c.to_bits());
    return rows;
}

bool LocalImage::contains(const LocalCocycle& c) const { return gf2::in_span(c.to_bits(), vectors()); }

int expected_local_dim(const FullTwoTorsionModel&, const LocalSquareClass& d_v) {
    // Full rational 2-torsion survives every twist, so dim E^{d}(Q_v)[2] = 2.
    const Place& v = d_v.place();
    return 2 + (v.is_two() ? 1 : 0) - (v.is_infinite() ? 1 : 0);
}

std::array<LocalCocycle, 2> torsion_images(const std::array<Integer, 3>& f, const Place& v) {
    auto cls = [&](const Integer& n) { return local_class(n, v); };
    const Integer d12 = f[0] - f[1], d13 = f[0] - f[2], d23 = f[1] - f[2];
    return {LocalCocycle{cls(d12 * d13), cls(d12)}, LocalCocycle{cls(-d12), cls(-d12 * d23)}};
}

LocalImage kummer_image(const FullTwoTorsionModel& model, const LocalSquareClass& d_v, const SamplingOptions& opts) {
    CacheKey key{model.roots(), d_v.place(), d_v.bits(), opts.identification};
    auto& c = cache();
    {
        std::shared_lock lock(c.mu);
        if (auto it = c.images.find(key); it != c.images.end()) return it->second;
    }
    LocalImage image = sample_image(model, d_v, opts);
    std::unique_lock lock(c.mu);
    return c.images.emplace(std::move(key), std::move(image)).first->second;
}

LocalImage intersect(const LocalImage& a, const LocalImage& b) {
    if (!(a.place == b.place)) throw std::invalid_argument("intersect: images at different places");
    const std::size_t cols = 2 * a.place.width();
    LocalImage out{a.place, {}};
    for (const auto& row : gf2::intersection(a.vectors(), b.vectors(), cols)) {
        out.basis.push_back(LocalCocycle::from_bits(a.place, row));
    }
    return out;
}

int h_v(const FullTwoTorsionModel& model, const LocalSquareClass& d_v, const SamplingOptions& opts) {
    const auto unit = kummer_image(model, LocalSquareClass::trivial(d_v.place()), opts);
    if (d_v.is_trivial()) return 0;
    const auto twisted = kummer_image(model, d_v, opts);
    return static_cast<int>(unit.dim() - intersect(unit, twisted).dim());
}

bool is_isotropic(const LocalImage& image) {
    for (const auto& x : image.basis)
        for (const auto& y : image.basis)
            if (local_pairing(x, y) != 0) return false;
    return true;
}

void clear_local_image_cache() {
    auto& c = cache();
    std::unique_lock lock(c.mu);
    c.images.clear();
}

std::size_t local_image_cache_size() {
    auto& c = cache();
    std::shared_lock lock(c.mu);
    return c.images.size();
}

}  // namespace twosel
