#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "semialg/relation.hpp"

namespace semialg {

struct SearchBudget {
    Int max_subsets = Int(10000000);            // guard on C(|P|, target)
    std::uint64_t max_tuple_evals = 100000000;  // hard stop during search
};

Int binomial(std::size_t n, std::size_t k);

using IndexSubset = std::vector<std::size_t>;  // increasing point indices

// Exhaustive search for a `target`-subset with no induced k-tuple in r.
// Returns the lexicographically first hit, or nullopt when none exists.
// Throws BudgetExceeded when the search space or evaluation count is refused.
std::optional<IndexSubset> brute_force_independent(const SemiAlgRelation& r,
                                                   const PointSet& pts, std::size_t target,
                                                   const SearchBudget& budget = {});

// Same search with every induced k-tuple required to be in r.
std::optional<IndexSubset> brute_force_clique(const SemiAlgRelation& r, const PointSet& pts,
                                              std::size_t target,
                                              const SearchBudget& budget = {});

// Largest independent subset, by downward scan over target sizes.
IndexSubset max_independent_bruteforce(const SemiAlgRelation& r, const PointSet& pts,
                                       const SearchBudget& budget = {});

// Arity 3: true iff no s points induce a complete triple system.
bool is_ks3_free(const SemiAlgRelation& r, const PointSet& pts, std::size_t s,
                 const SearchBudget& budget = {});

struct MonoTriangle {
    std::array<std::size_t, 3> indices;  // increasing
    std::size_t color;                   // relation index
};

// Exhaustive monochromatic-triangle scan over an arity-2 system. Verifies
// first that every pair is covered by some relation (error naming the pair).
std::optional<MonoTriangle> find_mono_triangle_bruteforce(const RelationSystem& sys,
                                                          const SearchBudget& budget = {});

// Per-relation pair-membership matrices (row-major, n*n bools); shared by the
// triangle scans.
std::vector<std::vector<bool>> pair_membership_tables(const RelationSystem& sys);

}  // namespace semialg
