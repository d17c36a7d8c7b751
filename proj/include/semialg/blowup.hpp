#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semialg/oracles.hpp"
#include "semialg/schur.hpp"

namespace semialg {

// Translation-invariant multicolor system built from a sum-free base
// partition: level 1 is the induced coloring of {1..n+1}; level j places
// n+1 copies of level j-1 spaced C_j > (5000 * max point)^2 apart and adds
// one relation per base class matching inter-copy distances.
struct BlowupSystem {
    unsigned levels = 1;
    SumFreePartition base;
    PointSet points;                                // (n_max+1)^levels integers
    std::vector<IntervalDistanceRelation> relations;  // m per level, level-major
    std::vector<Int> c_schedule;                    // spacing constant per level
};

BlowupSystem blowup(const SumFreePartition& base, unsigned levels,
                    const Int& point_budget = Int(100000));

RelationSystem to_relation_system(const BlowupSystem& sys);

struct BlowupVerification {
    bool coverage_ok = false;
    bool triangle_free = false;
    bool exhaustive = false;  // false when the triple scan was sampled
    std::optional<MonoTriangle> witness;
    std::size_t triples_checked = 0;
};

// Pair coverage plus per-color triangle-freeness; exhaustive when |P|^3 fits
// the budget, otherwise a seeded sample (flagged).
BlowupVerification verify_blowup(const BlowupSystem& sys, const SearchBudget& budget = {},
                                 std::uint64_t seed = 0);

struct InvarianceReport {
    bool invariant = true;
    bool exhaustive = false;
    std::size_t pairs_checked = 0;
    std::string violation;  // empty when invariant
};

// Membership of every relation must be unchanged under x,y -> x+s,y+s for
// each shift; exhaustive over pairs when they fit sample_pairs.
InvarianceReport verify_translation_invariance(const RelationSystem& sys,
                                               std::span<const Rat> shifts,
                                               std::size_t sample_pairs, std::uint64_t seed);

}  // namespace semialg
