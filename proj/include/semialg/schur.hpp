#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semialg/relation.hpp"

namespace semialg {

// Partition of {1..n_max} into sum-free classes: no class contains x, y
// (repetition allowed) together with x + y.
struct SumFreePartition {
    long n_max = 0;
    std::vector<std::vector<long>> classes;
};

// Independent checker used to cross-examine every search result.
bool is_sum_free(const std::vector<long>& values);
void validate_sum_free_partition(const SumFreePartition& p);  // throws

struct SchurOptions {
    // Each class must decompose into at most this many maximal integer
    // intervals (the low-complexity variant); unset = unconstrained.
    std::optional<unsigned> interval_cap;
    std::uint64_t node_budget = 2000000000ULL;
};

enum class SchurStatus { Sat, Unsat, Unknown };

struct SchurDecision {
    SchurStatus status = SchurStatus::Unknown;
    std::optional<SumFreePartition> partition;  // engaged for Sat
    std::uint64_t nodes = 0;
    // reported alongside interval-capped runs: 2^{m log2 log2 2t}
    double interval_bound = 0.0;
};

// Exhaustive backtracking with sum-free pruning and first-use symmetry
// breaking; Unsat answers are certificates, Unknown only on budget.
SchurDecision schur_decide(unsigned m, long n, const SchurOptions& opts = {});

struct SchurMaximum {
    SchurStatus status = SchurStatus::Unknown;  // Sat = exact value found
    long value = 0;                             // S(m), or S_t(m) when capped
    std::optional<SumFreePartition> partition;  // witness for `value`
    std::uint64_t nodes = 0;
    double interval_bound = 0.0;
};

// Largest n with a valid partition, found by increasing n until the first
// certified Unsat.
SchurMaximum schur_maximize(unsigned m, const SchurOptions& opts = {});

// Number of maximal integer intervals the class splits into.
unsigned interval_complexity(const std::vector<long>& values);

// The coloring induced on {1..N+1}: pair (x,y) gets class i iff |x-y| lies
// in class i. Relations are exact interval-distance relations; the system
// never contains a monochromatic triangle.
RelationSystem schur_coloring(const SumFreePartition& p);

// File format: first line "m N", then one line per class listing its values.
SumFreePartition parse_partition(std::istream& in);
SumFreePartition parse_partition_text(const std::string& text);
void write_partition(std::ostream& out, const SumFreePartition& p);
std::string partition_to_string(const SumFreePartition& p);
SumFreePartition load_partition(const std::string& path);
void save_partition(const std::string& path, const SumFreePartition& p);

}  // namespace semialg
