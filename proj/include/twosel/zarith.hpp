#pragma once

// Exact integer and rational arithmetic: factorization, valuations,
// quadratic residue symbols and square-class representatives.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace twosel {

using Integer = mpz_class;
// mpq_class is kept canonical: denominator > 0 and gcd(num, den) = 1.
using Rational = mpq_class;

struct FactorizationBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorOptions {
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 4'000'000;
    std::uint64_t seed = 0;
};

struct FactoredInteger {
    int sign = 1;
    std::map<Integer, unsigned> factors;

    Integer value() const;
    bool operator==(const FactoredInteger&) const = default;
};

// Signed squarefree representative of a class in Q^x / (Q^x)^2.
struct SquareFreePart {
    int sign = 1;
    std::set<Integer> support;

    Integer value() const;
    bool operator==(const SquareFreePart&) const = default;
};

bool is_probable_prime(const Integer& n);

/// Smallest prime strictly greater than n.
Integer next_prime(const Integer& n);

/// Complete factorization of a nonzero integer. Throws
/// FactorizationBudgetExceeded when Pollard rho runs out of iterations.
FactoredInteger factorize(const Integer& n, const FactorOptions& opts = {});

int valuation(const Integer& n, const Integer& p);
int valuation(const Rational& r, const Integer& p);

/// Legendre symbol (a / p) for an odd prime p.
int legendre(const Integer& a, const Integer& p);

SquareFreePart squarefree_decompose(const Rational& r, const FactorOptions& opts = {});

bool is_squarefree(const Integer& n, const FactorOptions& opts = {});

/// Smallest positive quadratic non-residue modulo an odd prime.
Integer least_nonresidue(const Integer& p);

/// Parses a decimal integer or a fraction "a/b".
Rational parse_rational(const std::string& text);

std::string to_string(const Integer& n);
std::string to_string(const Rational& r);

inline constexpr std::uint64_t kSieveLimit = 1'000'000;

// Primes up to kSieveLimit, sieved on first use.
const std::vector<std::uint32_t>& small_primes();

}  // namespace twosel
