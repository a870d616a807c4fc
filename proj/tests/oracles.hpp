#pragma once

// Brute-force references that share no code with the library beyond the
// integer types.

#include "twosel/zarith.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

namespace oracle {

using twosel::Integer;
using twosel::Rational;

/// a^((p-1)/2) mod p mapped to {-1, 0, 1}.
inline int euler(const Integer& a, const Integer& p) {
    Integer r;
    const Integer e = (p - 1) / 2;
    Integer am = a % p;
    if (am < 0) am += p;
    mpz_powm(r.get_mpz_t(), am.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

inline bool is_prime_naive(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

/// r in Q_2 is a nonzero square: even valuation and odd part = 1 mod 8.
inline bool square_at_2(const Rational& r) {
    if (r == 0) return false;
    Integer num = r.get_num(), den = r.get_den();
    int v = 0;
    while (num % 2 == 0) { num /= 2; ++v; }
    while (den % 2 == 0) { den /= 2; --v; }
    if (v % 2) return false;
    Integer u = num * den;
    u %= 8;
    if (u < 0) u += 8;
    return u == 1;
}

/// r lies in c * (Q_2^x)^2, with r = 0 accepted (a coordinate z = 0).
inline bool in_class_at_2(const Rational& r, const Integer& c) { return r == 0 || square_at_2(r * c); }

inline bool in_class_at_inf(const Rational& r, const Integer& c) { return r == 0 || (r > 0) == (c > 0); }

/// Solubility over Q_v (v = 2 or inf) of d1 z1^2 = x - e1, d2 z2^2 = x - e2,
/// d1 d2 z3^2 = x - e3, by searching x = e1 + d1 z1^2 on a grid of z1.
inline bool locally_soluble(const std::array<Integer, 3>& e, const Integer& d1, const Integer& d2, bool at_two) {
    const Integer d3 = d1 * d2;
    for (int k = 0; k <= 4; ++k) {
        const Integer den = Integer(1) << k;
        for (long a = 0; a <= (at_two ? 512 : 64); ++a) {
            Rational z(Integer(a), den);
            z.canonicalize();
            const Rational x = Rational(e[0]) + Rational(d1) * z * z;
            const Rational t2 = x - e[1], t3 = x - e[2];
            const bool ok = at_two ? in_class_at_2(t2, d2) && in_class_at_2(t3, d3)
                                   : in_class_at_inf(t2, d2) && in_class_at_inf(t3, d3);
            if (ok) return true;
        }
    }
    return false;
}

/// Number of points P in E(F_q) with 4P = O for y^2 = (x-e1)(x-e2)(x-e3).
inline int four_torsion_count(const std::array<Integer, 3>& e, long q) {
    auto mod = [q](long long a) { return static_cast<long>(((a % q) + q) % q); };
    auto inv = [&](long a) {
        long long r = 1, b = mod(a);
        for (long ex = q - 2; ex; ex >>= 1, b = b * b % q)
            if (ex & 1) r = r * b % q;
        return static_cast<long>(r);
    };
    std::array<long, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = mod(Integer(e[i] % q).get_si());
    using Pt = std::optional<std::pair<long, long>>;
    auto dbl = [&](const Pt& p) -> Pt {
        if (!p || p->second == 0) return std::nullopt;
        const long x = p->first, y = p->second;
        // f(x) = x^3 - s1 x^2 + s2 x - s3: slope (3x^2 - 2 s1 x + s2) / 2y, x3 = slope^2 + s1 - 2x.
        const long long s1 = mod(r[0] + r[1] + r[2]);
        const long long s2 = mod(1LL * r[0] * r[1] + 1LL * r[0] * r[2] + 1LL * r[1] * r[2]);
        const long long num = mod(3LL * x % q * x - 2 * s1 * x + s2);
        const long long lam = num * inv(2 * y) % q;
        const long x3 = mod(lam * lam + s1 - 2LL * x);
        const long y3 = mod(-(lam * mod(x3 - x) + y));
        return std::make_pair(x3, y3);
    };
    int count = 1;  // O
    for (long x = 0; x < q; ++x) {
        const long long fx = mod(1LL * mod(x - r[0]) * mod(x - r[1]) % q * mod(x - r[2]));
        for (long y = 0; y < q; ++y) {
            if (1LL * y * y % q != fx) continue;
            if (!dbl(dbl(Pt{std::make_pair(x, y)}))) ++count;
        }
    }
    return count;
}

}  // namespace oracle
