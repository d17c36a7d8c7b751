#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semialg/cutting.hpp"
#include "semialg/oracles.hpp"
#include "semialg/relation.hpp"

namespace semialg {

// A subset of a point set together with its own ordering; the sequence is
// the ordering, independent of base positions.
struct OrderedSubset {
    std::vector<std::size_t> order;  // point indices, in extractor order
    std::size_t size() const { return order.size(); }
};

// First ordered triple (by positions a < b < c in the ordering) violating
// (v_a,v_b) in E and (v_b,v_c) in E => (v_a,v_c) in E; nullopt when E is
// transitive on the ordering. Membership is evaluated symmetrically (the
// extractors demand symmetric relations).
std::optional<std::array<std::size_t, 3>> find_transitivity_violation(
    const PairRelation& rel, const PointSet& pts, const OrderedSubset& sub);

// Longest-chain labelling (Mirsky) on a transitive relation: the chain count
// equals the clique number, so the largest label class is independent of
// size at least |V| / omega.
struct DilworthResult {
    OrderedSubset independent;
    std::size_t chain_count = 0;  // = clique number of (V, E)
};

DilworthResult dilworth_independent(const PointSet& pts, const OrderedSubset& v,
                                    const PairRelation& rel, std::size_t omega);

// Exact clique number of a relation known to be transitive on the ordering
// (longest chain by dynamic program).
std::size_t transitive_clique_number(const PointSet& pts, const OrderedSubset& v,
                                     const PairRelation& rel);

struct TransitiveParams {
    double c3 = 4.0;                  // reporting constant
    CuttingBackend backend = CuttingBackend::Exact1D;
    std::uint64_t seed = 0;
    unsigned degree_cap = 8;
    Rat c1 = Rat(8);
    std::size_t recursion_floor = 4;  // |P| <= floor returns a singleton
    unsigned symmetry_trials = 16;
    // When set, a failed sampled symmetry check aborts instead of being
    // recorded; the exhaustive transitivity check on the output is the hard
    // gate either way.
    bool require_symmetric = false;
};

struct TransitiveReport {
    std::vector<std::size_t> sizes_per_level;  // |P| at each recursion entry
    std::size_t output_size = 0;
    double target_size = 0.0;       // N^{1/(c3 log2 m)}
    bool target_met = false;
    double measured_c3 = 0.0;       // minimal c3 the output size satisfies
    bool verified_transitive = false;
    std::vector<std::string> notes;
};

struct TransitiveResult {
    OrderedSubset subset;
    TransitiveReport report;
};

// The recursive extractor: surfaces Z_{p,i,j}, a cutting with r = (mt)^2,
// heaviest cell -> P1, non-crossing complement -> P2, sign-pattern class
// relative to the lowest-index point of P1 -> P3, recursion on P1 and P3,
// concatenated ordering. Every relation is exhaustively checked transitive
// on the output before returning.
TransitiveResult transitive_subset(const PointSet& pts,
                                   const std::vector<PairRelation>& relations,
                                   const TransitiveParams& params);

struct EmptyInAllReport {
    TransitiveReport transitive;
    std::vector<std::size_t> clique_bounds;  // omega_i actually used
    std::size_t output_size = 0;
    double target_size = 0.0;  // N^{1/(c3 log2 m)} / (omega_1 ... omega_m)
    bool verified_empty = false;
};

struct EmptyInAllResult {
    OrderedSubset subset;
    EmptyInAllReport report;
};

// transitive_subset followed by an m-fold Dilworth extraction; the output is
// exhaustively verified to avoid every relation. Clique bounds are computed
// on the transitive subset when not supplied.
EmptyInAllResult empty_in_all(const PointSet& pts,
                              const std::vector<PairRelation>& relations,
                              const std::vector<std::size_t>& clique_bounds,
                              const TransitiveParams& params);

}  // namespace semialg
