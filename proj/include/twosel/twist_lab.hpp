#pragma once

// Quadratic twist experiments: ranks of twists, the parity identity, global
// characters with prescribed local behaviour, the rank +2 / +1 searches,
// and the scan over |d| <= B that estimates t_E and A_E.

#include "twosel/selmer.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace twosel {

struct SearchOptions {
    std::uint64_t prime_budget = 1'000'000;
    SamplingOptions sampling{};
};

/// Local classes of d at Sigma(model) and at the primes dividing d,
/// dropping trivial ones.
std::map<Place, LocalSquareClass> twist_masks(const FullTwoTorsionModel& model, const Integer& d);

/// r2(E^d) as the masked Selmer rank of E.
std::size_t rank_of_twist(const FullTwoTorsionModel& model, const Integer& d, const SamplingOptions& opts = {});

/// r2(E^d) by descent on the twisted model itself.
std::size_t rank_of_twist_direct(const FullTwoTorsionModel& model, const Integer& d, const SamplingOptions& opts = {});

struct ParityResult {
    int lhs = 0;
    int rhs = 0;
    bool equal = false;
};

ParityResult parity_check(const FullTwoTorsionModel& model, const Integer& d, const SamplingOptions& opts = {});

/// Same identity when r2(E) and r2(E^d) are already known.
ParityResult parity_check(const FullTwoTorsionModel& model, const Integer& d, std::size_t rank_base,
                          std::size_t rank_twist, const SamplingOptions& opts = {});

struct CharPrescription {
    std::map<Place, LocalSquareClass> at_sigma;  // missing places: trivial
    std::set<Integer> ramified;                  // T, primes outside Sigma
    std::optional<Integer> extra_prime;          // fixed q
    bool require_extra_prime = false;            // search for q even if none is needed
};

struct CharacterResult {
    Integer d;
    std::optional<Integer> q;
    std::uint64_t primes_examined = 0;
};

/// Squarefree d supported on Sigma, T and q with the prescribed classes on
/// Sigma, or nothing when q (or its absence) makes the system inconsistent.
std::optional<Integer> solve_character(const SigmaSet& sigma, const CharPrescription& pres);

/// Solves without q when allowed, otherwise tries q = 3, 5, 7, ... outside Sigma and T.
CharacterResult build_character(const FullTwoTorsionModel& model, const CharPrescription& pres,
                                const SearchOptions& opts = {});

struct Inc2Result {
    Integer q;
    std::size_t r_before = 0;
    std::size_t r_after = 0;
    std::uint64_t primes_examined = 0;
    std::vector<std::string> alarms;
};

Inc2Result find_inc2(const FullTwoTorsionModel& model, const SearchOptions& opts = {});

struct PlusOneResult {
    Integer d;
    Integer q;
    std::size_t r_before = 0;
    std::size_t r_after = 0;
    std::size_t masked_rank = 0;
    std::uint64_t candidates = 0;
};

PlusOneResult find_plus_one(const FullTwoTorsionModel& model, const SearchOptions& opts = {});

struct TwistRecord {
    Integer d;
    std::size_t rank = 0;
    std::size_t sigma_prime_size = 0;
    int parity_lhs = 0;
    int parity_rhs = 0;
    double ms = 0;
    std::string error;
};

struct BoundChecks {
    bool lower = false;     // t_hat >= 2
    bool upper_n1 = false;  // t_hat <= n + 1
    bool upper_n = false;   // t_hat <= n
};

struct ScanSummary {
    std::string curve;
    std::uint64_t bound = 0;
    std::size_t n = 0;
    std::size_t records_count = 0;
    std::map<std::size_t, std::size_t> rank_histogram;
    std::size_t t_hat = 0;
    std::size_t r_max = 0;
    std::vector<std::size_t> gaps;
    BoundChecks bound_checks;
    std::size_t parity_failures = 0;
    std::size_t errors = 0;
    bool both_parities = false;
};

struct ScanOptions {
    std::uint64_t bound = 1;
    std::uint64_t start = 1;  // first |d| to compute
    unsigned parallel = 1;
    bool timing = false;
    SamplingOptions sampling{};
};

/// Squarefree d with start <= |d| <= bound, by |d| then positive first.
std::vector<Integer> scan_order(std::uint64_t start, std::uint64_t bound);

/// Streams one record per d in scan_order; the sink sees them in order.
void scan(const FullTwoTorsionModel& model, const ScanOptions& opts, const std::function<void(const TwistRecord&)>& sink);

ScanSummary summarize(const FullTwoTorsionModel& model, std::uint64_t bound, const std::vector<TwistRecord>& records);

struct MultiplicativeReport {
    Integer prime;
    int v_delta = 0;
    bool even = false;
    int h_unramified = 0;
    int h_trivial = 0;
    bool ok = false;
    std::string note;
};

/// h at the unramified nontrivial class of a multiplicative prime.
MultiplicativeReport multiplicative_h_check(const FullTwoTorsionModel& model, const Integer& p,
                                            const SamplingOptions& opts = {});

}  // namespace twosel
