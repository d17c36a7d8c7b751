#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semialg/oracles.hpp"
#include "semialg/partition.hpp"
#include "semialg/relation.hpp"
#include "semialg/transitive.hpp"

namespace semialg {

// Exhaustive classification of an arity-3 relation against disjoint parts:
// part triples are homogeneous when every cross triple agrees; (p,q,i) with
// p,q outside part i is good when membership of (p,q,x) is constant over the
// part, bad otherwise.
struct TripleClassification {
    std::size_t homogeneous_in = 0;
    std::size_t homogeneous_out = 0;
    std::size_t mixed_part_triples = 0;
    std::size_t good_triples = 0;
    // (p index, q index, part index), exact
    std::vector<std::array<std::size_t, 3>> bad_triples;
    bool all_homogeneous() const { return mixed_part_triples == 0; }
};

TripleClassification classify_triples(const PointSet& pts, const SemiAlgRelation& rel,
                                      const std::vector<std::vector<std::size_t>>& parts);

struct HomogeneousParts {
    std::vector<std::vector<std::size_t>> parts;  // point indices, disjoint
    std::vector<std::size_t> source_parts;        // partition part index per part
    // (i1,i2,i3) -> true when all cross triples are in E, false when none are
    std::map<std::array<std::size_t, 3>, bool> homogeneous_sign;
};

struct HomogeneousPartsParams {
    unsigned r = 3;          // parts to select
    unsigned part_size = 3;  // points per part
    CuttingBackend backend = CuttingBackend::Exact1D;
    std::uint64_t seed = 0;
    unsigned max_retries = 64;
    unsigned degree_cap = 8;
    Rat c1 = Rat(8);
};

struct HomogeneousPartsOutcome {
    std::optional<HomogeneousParts> parts;  // engaged on success
    unsigned attempts = 0;
    std::size_t best_bad_count = 0;  // of the best failed attempt
    TripleClassification classification;  // of the successful selection
    std::vector<std::string> notes;
    bool success() const { return parts.has_value(); }
};

// Builds the surfaces Z_{p,q,j} (zero sets of x -> f_j(p,q,x)), partitions P
// with ell = ceil(sqrt(N)) parts, then repeatedly selects r parts and
// part_size points per part until the selection has zero bad triples. Every
// success is rechecked exhaustively (zero bad, all part triples homogeneous).
HomogeneousPartsOutcome homogeneous_parts(const PointSet& pts, const SemiAlgRelation& rel,
                                          const HomogeneousPartsParams& params);

// E_{i,j}: the binary relation (p1,p2) -> Phi(f_1(p1,p2,q0) >= 0, ...) with
// the third block substituted; same truth table, degree never grows.
SemiAlgRelation derived_binary(const SemiAlgRelation& rel, const Point& q0);

struct ExtractConfig {
    std::size_t small_n = 24;              // exhaustive-oracle base case
    std::size_t oracle_fallback_below = 48;  // on homogeneous-parts failure
    unsigned parts_r = 3;
    unsigned part_size = 3;
    unsigned index_target = 3;             // kept parts after the rep recursion
    std::size_t clique_threshold = 4;      // derived-binary clique dichotomy
    unsigned homog_retries = 64;
    double c_bound_report = 2.0;           // c in the reported size-bound value
    double c3 = 4.0;
    unsigned degree_cap = 8;
    SearchBudget budget;

    // the paper's parameter schedule, clamped to stay runnable at desk sizes
    static ExtractConfig paper_preset(std::size_t n, unsigned d, unsigned t, double c2);
};

struct ExtractReport {
    std::vector<std::string> trace;  // one line per recursion step
    std::size_t output_size = 0;
    double bound_value = 1.0;  // 2^{(log log N)^2 / (c^s log log log N)}
    unsigned homog_attempts = 0;
    unsigned oracle_fallbacks = 0;
    bool ks3_checked = false;     // the K_s^(3)-freeness pre was oracle-checked
    bool ks3_free = false;        // its outcome (size guarantee void when false)
    bool verified_free = false;   // final exhaustive triple check passed
    std::vector<std::string> notes;
};

struct ExtractResult {
    IndexSubset subset;
    ExtractReport report;
};

// The recursive extractor: homogeneous parts -> representative recursion for
// the index set -> derived binary relations -> clique dichotomy (recurse at
// s-1 on a large clique) -> empty_in_all inside each kept part -> recursion
// -> union. The returned subset is exhaustively verified E-free.
ExtractResult extract_independent(const PointSet& pts, const SemiAlgRelation& rel,
                                  std::size_t s, const ExtractConfig& config,
                                  std::uint64_t seed);

}  // namespace semialg
