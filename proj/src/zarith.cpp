#include "twosel/zarith.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace twosel {

namespace {

constexpr std::array<unsigned, 12> kDeterministicBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
// Beyond 64 bits the test is probabilistic with a fixed witness list.
constexpr std::array<unsigned, 20> kExtraBases = {41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                                                  83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned s, unsigned base) {
    Integer a = base;
    if (a % n == 0) return true;
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer n1 = n - 1;
    if (x == 1 || x == n1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n1) return true;
        if (x == 1) return false;
    }
    return false;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, or nothing when the iteration allowance runs out.
std::optional<Integer> pollard_brent(const Integer& n, std::uint64_t c0, std::uint64_t& allowance) {
    Integer y = 2 + c0, c = 1 + c0, g = 1, q = 1, x, ys;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                Integer diff = x - y;
                if (diff < 0) diff = -diff;
                q = (q * diff) % n;
            }
            g = gcd(q, n);
            k += lim;
            if (allowance <= lim) {
                allowance = 0;
                return std::nullopt;
            }
            allowance -= lim;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            Integer diff = x - ys;
            if (diff < 0) diff = -diff;
            g = gcd(diff, n);
            if (allowance == 0) return std::nullopt;
            --allowance;
        } while (g == 1);
    }
    if (g == n) return std::nullopt;
    return g;
}

void split_composite(const Integer& n, std::map<Integer, unsigned>& out, const FactorOptions& opts,
                     std::uint64_t& allowance) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        std::map<Integer, unsigned> sub;
        split_composite(root, sub, opts, allowance);
        for (const auto& [p, e] : sub) out[p] += 2 * e;
        return;
    }
    for (std::uint64_t attempt = 0;; ++attempt) {
        auto f = pollard_brent(n, opts.seed + attempt, allowance);
        if (f) {
            split_composite(*f, out, opts, allowance);
            split_composite(n / *f, out, opts, allowance);
            return;
        }
        if (allowance == 0) {
            throw FactorizationBudgetExceeded("factorization budget exceeded for " + n.get_str());
        }
    }
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<std::uint32_t> out;
        std::vector<bool> composite(kSieveLimit + 1, false);
        for (std::uint64_t i = 2; i <= kSieveLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= kSieveLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

Integer FactoredInteger::value() const {
    Integer v = sign;
    for (const auto& [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

Integer SquareFreePart::value() const {
    Integer v = sign;
    for (const auto& p : support) v *= p;
    return v;
}

bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    for (unsigned p : kDeterministicBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Integer d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    for (unsigned b : kDeterministicBases) {
        if (!miller_rabin_round(n, d, s, b)) return false;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return true;
    for (unsigned b : kExtraBases) {
        if (!miller_rabin_round(n, d, s, b)) return false;
    }
    return true;
}

Integer next_prime(const Integer& n) {
    Integer c = n + 1;
    if (c <= 2) return 2;
    if (mpz_even_p(c.get_mpz_t())) ++c;
    while (!is_probable_prime(c)) c += 2;
    return c;
}

FactoredInteger factorize(const Integer& n, const FactorOptions& opts) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    FactoredInteger out;
    out.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);
    for (std::uint32_t p : small_primes()) {
        if (p > opts.trial_bound || Integer(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            out.factors[Integer(p)] = e;
        }
    }
    if (m == 1) return out;
    if (is_probable_prime(m)) {
        out.factors[m] += 1;
        return out;
    }
    std::uint64_t allowance = opts.rho_iterations;
    split_composite(m, out.factors, opts, allowance);
    return out;
}

int valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) == 0) return 0;
    Integer rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

int valuation(const Rational& r, const Integer& p) {
    return valuation(Integer(r.get_num()), p) - valuation(Integer(r.get_den()), p);
}

int legendre(const Integer& a, const Integer& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

SquareFreePart squarefree_decompose(const Rational& r, const FactorOptions& opts) {
    if (r == 0) throw std::invalid_argument("squarefree_decompose of zero");
    SquareFreePart out;
    out.sign = sgn(r) < 0 ? -1 : 1;
    // num/den is num*den modulo squares.
    for (const Integer* part : {&static_cast<const Integer&>(r.get_num()), &static_cast<const Integer&>(r.get_den())}) {
        for (const auto& [p, e] : factorize(*part, opts).factors) {
            if (e % 2 == 1) {
                if (!out.support.erase(p)) out.support.insert(p);
            }
        }
    }
    return out;
}

bool is_squarefree(const Integer& n, const FactorOptions& opts) {
    if (n == 0) return false;
    for (const auto& [p, e] : factorize(n, opts).factors) {
        if (e > 1) return false;
    }
    return true;
}

Integer least_nonresidue(const Integer& p) {
    for (Integer u = 2;; ++u) {
        if (legendre(u, p) == -1) return u;
    }
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational number: '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace twosel
