#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semialg/cutting.hpp"
#include "semialg/oracles.hpp"
#include "semialg/relation.hpp"

namespace semialg {

struct MonoFindConfig {
    std::size_t oracle_threshold = 12;  // exhaustive base below this size
    unsigned degree_cap = 8;
    Rat c1 = Rat(8);
    SearchBudget budget;
};

enum class MonoMechanism {
    OracleBase,   // exhaustive scan at a recursion base
    ScanA,        // chi-colored point against a pair inside the heavy cell
    ScanB,        // pair inside a chi class plus any heavy-cell point
    CrossScan,    // exhaustive sweep over split-crossing triples
    Recursion,    // found deeper in the recursion
};

const char* mono_mechanism_name(MonoMechanism m);

struct MonoFindReport {
    std::size_t nodes = 0;
    std::optional<MonoMechanism> found_by;
    std::vector<std::string> trace;
};

struct MonoFindResult {
    std::optional<MonoTriangle> triangle;  // verified before returning
    MonoFindReport report;
};

// Search procedure following the multicolor upper-bound argument: surfaces
// Z_{i,j,p}, a cutting with r = 2 t m, heaviest cell P1, non-crossing
// complement P2 with its color map chi, then the m0-vs-log-m case split.
// The recursion keeps completeness by also covering the complement and all
// split-crossing triples, so NotFound answers are exhaustive.
MonoFindResult find_mono_triangle(const RelationSystem& sys, const MonoFindConfig& config,
                                  std::uint64_t seed);

}  // namespace semialg
