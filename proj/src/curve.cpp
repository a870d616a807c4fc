#include "twosel/curve.hpp"

#include <algorithm>
#include <sstream>

namespace twosel {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Integer> positive_divisors(const Integer& n) {
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factorize(n).factors) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Rational eval_cubic(const std::array<Rational, 4>& c, const Rational& x) {
    return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
}

// Rational square root, if r is a square in Q.
std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    const Integer num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return Rational(sn, sd);
}

}  // namespace

FullTwoTorsionModel::FullTwoTorsionModel(Integer a, Integer b, Integer c) : roots_{std::move(a), std::move(b), std::move(c)} {
    std::sort(roots_.begin(), roots_.end());
    if (roots_[0] == roots_[1] || roots_[1] == roots_[2]) throw CurveError("roots must be pairwise distinct (singular curve)");
}

Integer FullTwoTorsionModel::discriminant() const {
    const Integer p = (roots_[0] - roots_[1]) * (roots_[0] - roots_[2]) * (roots_[1] - roots_[2]);
    return 16 * p * p;
}

std::string FullTwoTorsionModel::to_string() const {
    return roots_[0].get_str() + "," + roots_[1].get_str() + "," + roots_[2].get_str();
}

Rational LongModel::discriminant() const {
    const Rational b2v = b2(), b4v = b4(), b6v = b6();
    const Rational b8 = a[0] * a[0] * a[4] + 4 * a[1] * a[4] - a[0] * a[2] * a[3] + a[1] * a[2] * a[2] - a[3] * a[3];
    return -b2v * b2v * b8 - 8 * b4v * b4v * b4v - 27 * b6v * b6v + 9 * b2v * b4v * b6v;
}

std::string LongModel::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s + "]";
}

bool SigmaSet::contains(const Place& v) const { return std::find(places.begin(), places.end(), v) != places.end(); }

std::vector<Integer> SigmaSet::finite_primes() const {
    std::vector<Integer> out;
    for (const auto& v : places)
        if (!v.is_infinite()) out.push_back(v.prime());
    return out;
}

SigmaSet sigma_union(const SigmaSet& s, const std::set<Place>& extra) {
    std::set<Place> all(s.places.begin(), s.places.end());
    all.insert(extra.begin(), extra.end());
    return SigmaSet{std::vector<Place>(all.begin(), all.end())};
}

SigmaSet sigma_set(const FullTwoTorsionModel& model, const std::set<Place>& extra) {
    std::set<Place> places{Place::infinity(), Place::finite(2)};
    const auto& e = model.roots();
    for (const Integer& diff : {Integer(e[1] - e[0]), Integer(e[2] - e[0]), Integer(e[2] - e[1])}) {
        for (const auto& [p, k] : factorize(diff).factors) places.insert(Place::finite(p));
    }
    places.insert(extra.begin(), extra.end());
    return SigmaSet{std::vector<Place>(places.begin(), places.end())};
}

FullTwoTorsionModel twist(const FullTwoTorsionModel& model, const Integer& d) {
    if (d == 0) throw CurveError("twist by zero");
    if (!is_squarefree(d)) throw CurveError("twist parameter must be squarefree, got " + d.get_str());
    const auto& e = model.roots();
    return FullTwoTorsionModel(d * e[0], d * e[1], d * e[2]);
}

std::vector<Rational> two_division_roots(const LongModel& m) {
    std::array<Rational, 4> c{m.b6(), 2 * m.b4(), m.b2(), Rational(4)};
    Integer den = 1;
    for (const auto& x : c) den = lcm(den, x.get_den());
    std::array<Integer, 4> ic;
    for (std::size_t i = 0; i < 4; ++i) ic[i] = Integer(c[i] * den);

    // y = c3 x turns c3^2 * cubic into the monic y^3 + c2 y^2 + c1 c3 y + c0 c3^2.
    const Integer& lead = ic[3];
    const Integer constant = ic[0] * lead * lead;
    std::vector<Rational> roots;
    std::array<Rational, 4> work = c;

    auto deflate = [&](const Rational& r) {
        // Synthetic division of the cubic by (x - r), leaving a quadratic.
        const Rational q2 = work[3];
        const Rational q1 = work[2] + r * q2;
        const Rational q0 = work[1] + r * q1;
        const Rational disc = q1 * q1 - 4 * q2 * q0;
        roots.push_back(r);
        if (auto s = rational_sqrt(disc)) {
            for (const Rational& root : {Rational((-q1 - *s) / (2 * q2)), Rational((-q1 + *s) / (2 * q2))}) {
                Rational canon = root;
                canon.canonicalize();
                if (std::find(roots.begin(), roots.end(), canon) == roots.end()) roots.push_back(canon);
            }
        }
        std::sort(roots.begin(), roots.end());
    };

    if (constant == 0) {
        deflate(Rational(0));
        return roots;
    }
    for (const Integer& div : positive_divisors(abs(constant))) {
        for (const Integer& y : {div, Integer(-div)}) {
            Rational x(y, lead);
            x.canonicalize();
            if (eval_cubic(work, x) == 0) {
                deflate(x);
                return roots;
            }
        }
    }
    return roots;
}

int torsion_two_structure(const LongModel& m) {
    if (m.discriminant() == 0) throw CurveError("singular Weierstrass model");
    switch (two_division_roots(m).size()) {
        case 3: return 2;
        case 1: return 1;
        default: return 0;
    }
}

std::optional<FullTwoTorsionModel> to_full_two_torsion(const LongModel& m) {
    if (m.discriminant() == 0) throw CurveError("singular Weierstrass model");
    const auto r = two_division_roots(m);
    if (r.size() != 3) return std::nullopt;
    // (2y + a1 x + a3)^2 = 4 prod (x - r_i); scaling x by u^2 with den(r_i) | u^2.
    Integer den = 1;
    for (const auto& x : r) den = lcm(den, x.get_den());
    Integer u = 1;
    for (const auto& [p, e] : factorize(den).factors) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), (e + 1) / 2);
        u *= pk;
    }
    const Integer u2 = u * u;
    return FullTwoTorsionModel(Integer(r[0] * u2), Integer(r[1] * u2), Integer(r[2] * u2));
}

LongModel to_long_model(const FullTwoTorsionModel& model) {
    const auto& e = model.roots();
    const Integer s1 = e[0] + e[1] + e[2];
    const Integer s2 = e[0] * e[1] + e[0] * e[2] + e[1] * e[2];
    const Integer s3 = e[0] * e[1] * e[2];
    return LongModel{{Rational(0), Rational(-s1), Rational(0), Rational(s2), Rational(-s3)}};
}

int place_class(const FullTwoTorsionModel& model, const Integer& q) {
    if (sigma_set(model).contains(Place::finite(q))) throw CurveError("place_class: q = " + q.get_str() + " lies in Sigma");
    return 2;
}

bool four_torsion_rational_at(const FullTwoTorsionModel& model, const Integer& q) {
    if (q == 2 || sigma_set(model).contains(Place::finite(q)))
        throw CurveError("four_torsion_rational_at: q = " + q.get_str() + " must be odd and outside Sigma");
    // (e_i, 0) is halvable over Q_q iff e_i - e_j and e_i - e_k are squares.
    const auto& e = model.roots();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j && legendre(e[i] - e[j], q) != 1) return false;
        }
    }
    return true;
}

Reduction reduction_type(const FullTwoTorsionModel& model, const Integer& p) {
    const auto& e = model.roots();
    int collisions = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (mpz_divisible_p(Integer(e[i] - e[j]).get_mpz_t(), p.get_mpz_t())) ++collisions;
    if (collisions == 0) return Reduction::good;
    return collisions == 1 ? Reduction::multiplicative : Reduction::additive;
}

CurveInput parse_curve(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (c != ' ') text.push_back(c);
    if (text.empty()) throw CurveError("empty curve string");
    if (text.front() == '[') {
        if (text.back() != ']') throw CurveError("unterminated long model: " + raw);
        const auto parts = split(text.substr(1, text.size() - 2), ',');
        if (parts.size() != 5) throw CurveError("long model needs [a1,a2,a3,a4,a6]: " + raw);
        LongModel m;
        try {
            for (std::size_t i = 0; i < 5; ++i) m.a[i] = parse_rational(parts[i]);
        } catch (const std::invalid_argument& ex) {
            throw CurveError(ex.what());
        }
        if (m.discriminant() == 0) throw CurveError("singular Weierstrass model: " + raw);
        return m;
    }
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw CurveError("full 2-torsion curve needs e1,e2,e3: " + raw);
    std::array<Integer, 3> e;
    for (std::size_t i = 0; i < 3; ++i) {
        Rational r;
        try {
            r = parse_rational(parts[i]);
        } catch (const std::invalid_argument& ex) {
            throw CurveError(ex.what());
        }
        if (r.get_den() != 1) throw CurveError("roots must be integers: " + raw);
        e[i] = r.get_num();
    }
    return FullTwoTorsionModel(e[0], e[1], e[2]);
}

FullTwoTorsionModel require_full_two_torsion(const CurveInput& input) {
    if (const auto* full = std::get_if<FullTwoTorsionModel>(&input)) return *full;
    const auto& m = std::get<LongModel>(input);
    if (auto full = to_full_two_torsion(m)) return *full;
    throw CurveError("not full 2-torsion (dim E(Q)[2] = " + std::to_string(torsion_two_structure(m)) + ")");
}

}  // namespace twosel
