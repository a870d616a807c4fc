#pragma once

// Elliptic curve models with full rational 2-torsion, general Weierstrass
// models (2-torsion detection only), the place set Sigma and twists.

#include "twosel/padic.hpp"
#include "twosel/zarith.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace twosel {

struct CurveError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// y^2 = (x - e1)(x - e2)(x - e3) with integers e1 < e2 < e3.
class FullTwoTorsionModel {
public:
    /// Sorts the roots; throws CurveError if two coincide.
    FullTwoTorsionModel(Integer a, Integer b, Integer c);

    const std::array<Integer, 3>& roots() const { return roots_; }
    const Integer& e(std::size_t i) const { return roots_[i]; }

    /// 16 ((e1-e2)(e1-e3)(e2-e3))^2
    Integer discriminant() const;

    /// Input form "e1,e2,e3".
    std::string to_string() const;

    bool operator==(const FullTwoTorsionModel&) const = default;
    auto operator<=>(const FullTwoTorsionModel&) const = default;

private:
    std::array<Integer, 3> roots_;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct LongModel {
    std::array<Rational, 5> a;  // a1, a2, a3, a4, a6

    Rational b2() const { return a[0] * a[0] + 4 * a[1]; }
    Rational b4() const { return 2 * a[3] + a[0] * a[2]; }
    Rational b6() const { return a[2] * a[2] + 4 * a[4]; }
    Rational discriminant() const;
    std::string to_string() const;
};

/// Places of Sigma: inf first, then 2, then odd primes ascending.
struct SigmaSet {
    std::vector<Place> places;

    std::size_t n() const { return places.size(); }
    bool contains(const Place& v) const;
    std::vector<Integer> finite_primes() const;
};

SigmaSet sigma_set(const FullTwoTorsionModel& model, const std::set<Place>& extra = {});

/// Merges two place lists into Sigma order.
SigmaSet sigma_union(const SigmaSet& s, const std::set<Place>& extra);

/// Model of the quadratic twist E^d; d must be squarefree and nonzero.
FullTwoTorsionModel twist(const FullTwoTorsionModel& model, const Integer& d);

/// Rational roots of 4x^3 + b2 x^2 + 2 b4 x + b6, ascending.
std::vector<Rational> two_division_roots(const LongModel& m);

/// dim E(Q)[2] over F2.
int torsion_two_structure(const LongModel& m);

std::optional<FullTwoTorsionModel> to_full_two_torsion(const LongModel& m);

LongModel to_long_model(const FullTwoTorsionModel& model);

/// dim E(Q_q)[2] for q outside Sigma; always 2 here.
int place_class(const FullTwoTorsionModel& model, const Integer& q);

/// E[4] is contained in E(Q_q), for an odd prime q of good reduction.
bool four_torsion_rational_at(const FullTwoTorsionModel& model, const Integer& q);

enum class Reduction { good, multiplicative, additive };

/// Reduction type at an odd prime from the root pattern mod p.
Reduction reduction_type(const FullTwoTorsionModel& model, const Integer& p);

using CurveInput = std::variant<FullTwoTorsionModel, LongModel>;

/// "e1,e2,e3" or "[a1,a2,a3,a4,a6]".
CurveInput parse_curve(const std::string& text);

/// Accepts either form; long models are normalized when the 2-division
/// cubic splits, otherwise CurveError reports dim E(Q)[2].
FullTwoTorsionModel require_full_two_torsion(const CurveInput& input);

}  // namespace twosel
