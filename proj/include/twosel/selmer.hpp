#pragma once

// 2-Selmer groups of full 2-torsion curves as one F2 kernel inside
// Q(S', 2)^2, together with masked, strict and relaxed variants, the
// Poitou-Tate dimension identity and Frobenius evaluation.

#include "twosel/curve.hpp"
#include "twosel/local_descent.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace twosel {

struct SelmerError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PrimeBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generators [-1, p1, p2, ...] of Q(S', 2), the p_i the finite places of S'.
struct GlobalClassBasis {
    std::vector<Integer> generators;

    static GlobalClassBasis from_sigma(const SigmaSet& sigma);
    std::size_t size() const { return generators.size(); }
};

/// Element of Q(S', 2) in coordinates over a GlobalClassBasis.
struct GlobalSquareClass {
    gf2::BitVector coords;

    /// Signed squarefree representative.
    Integer value(const GlobalClassBasis& basis) const;
    /// Throws SelmerError if d has a prime factor outside the basis.
    static GlobalSquareClass encode(const Integer& d, const GlobalClassBasis& basis);
};

struct SelmerElement {
    Integer d1 = 1;
    Integer d2 = 1;
    bool operator==(const SelmerElement&) const = default;
};

struct SelmerSpec {
    FullTwoTorsionModel model;
    std::map<Place, LocalSquareClass> masks;  // default: trivial everywhere
    std::set<Place> strict;                   // res_v = 0
    std::set<Place> relaxed;                  // no condition
    std::set<Place> extra_places;             // enlarge S' without changing conditions
    SamplingOptions sampling{};

    explicit SelmerSpec(FullTwoTorsionModel m) : model(std::move(m)) {}

    /// Sigma(model) together with every place named by the spec.
    SigmaSet sigma_prime() const;
};

struct SelmerResult {
    SigmaSet sigma_prime;
    GlobalClassBasis generators;
    std::size_t dim = 0;
    std::vector<SelmerElement> basis;
    gf2::Rows vectors;  // coordinates in Q(S',2)^2: d1 block then d2 block
};

SelmerResult selmer_group(const SelmerSpec& spec);

/// res_v of a vector of Q(S',2)^2.
LocalCocycle restrict_to(const gf2::BitVector& element, const GlobalClassBasis& generators, const Place& v);

struct StrictRelaxedDims {
    std::size_t strict = 0;
    std::size_t relaxed = 0;
};

StrictRelaxedDims strict_relaxed_dims(const SelmerSpec& spec, const std::set<Place>& T);

struct DualityReport {
    bool ok = false;
    std::size_t dim_selmer = 0;
    std::size_t dim_strict = 0;
    std::size_t dim_relaxed = 0;
    std::size_t expected_gap = 0;        // sum over T of dim alpha_v
    std::size_t relaxed_image_dim = 0;   // image of Sel^T in sum H^1_v / alpha_v
    std::size_t selmer_image_dim = 0;    // image of Sel in sum alpha_v
    bool orthogonal = false;
    std::optional<std::pair<SelmerElement, SelmerElement>> counterexample;
    std::string message;
};

DualityReport duality_check(const SelmerSpec& spec, const std::set<Place>& T);

/// (bit of (d1/q), bit of (d2/q)); zero iff res_q vanishes.
std::array<int, 2> frobenius_eval(const SelmerElement& element, const Integer& q, const SigmaSet* sigma_prime = nullptr);

struct CollapseOptions {
    std::uint64_t prime_budget = 1'000'000;
};

struct CollapseResult {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t dim_before = 0;
    std::size_t dim_after = 0;
    std::vector<std::size_t> directions;  // indices i of the chosen sigma_i
    std::vector<Integer> primes;          // omega_i with Frob = sigma_i
    std::map<Place, LocalSquareClass> masks;
};

struct CollapseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// For dim = n + k with 2 <= k <= n, picks k Frobenius directions on which
/// the Selmer group surjects onto E[2]^k and adds ramified masks there.
CollapseResult collapse_masks(const SelmerSpec& spec, const CollapseOptions& opts = {});

}  // namespace twosel
