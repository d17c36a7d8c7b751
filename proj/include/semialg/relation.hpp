#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "semialg/pointset.hpp"
#include "semialg/poly.hpp"

namespace semialg {

// k-ary relation on points of R^d decided by a Boolean function of the
// conditions f_j(p_1,...,p_k) >= 0. Sign 0 counts as ">= 0 holds", so
// degenerate ties classify instead of crashing.
class SemiAlgRelation {
public:
    SemiAlgRelation(unsigned arity, unsigned dim, std::vector<Poly> polys,
                    std::vector<bool> truth_table, unsigned complexity);

    unsigned arity() const { return arity_; }
    unsigned dim() const { return dim_; }
    unsigned complexity() const { return complexity_; }
    const std::vector<Poly>& polys() const { return polys_; }
    // Entry i answers "is the tuple in E" for condition-indicator index i,
    // where bit j of i is 1 iff f_j >= 0 holds.
    const std::vector<bool>& truth_table() const { return truth_table_; }

    bool contains(std::span<const Point> pts) const;
    bool contains_pair(const Point& a, const Point& b) const;

private:
    unsigned arity_;
    unsigned dim_;
    unsigned complexity_;
    std::vector<Poly> polys_;
    std::vector<bool> truth_table_;
};

// (p_{i_1},...,p_{i_k}) in E, points supplied in base order.
bool tuple_in_relation(const SemiAlgRelation& r, std::span<const Point> pts);

// 1-D binary relation decided by the pair distance: membership iff
//   window_lo <= |x - y| <= window_hi  and
//   exists z in targets with | |x-y|/scale - z | < slack.
// Exact rational arithmetic throughout; translation invariant by
// construction. This closed form is what the blow-up construction produces;
// a polynomial/truth-table rendering is available through to_semialg() when
// the table is small enough to materialize.
class IntervalDistanceRelation {
public:
    IntervalDistanceRelation(Rat window_lo, Rat window_hi, Rat scale, Rat slack,
                             std::vector<Int> targets);

    unsigned arity() const { return 2; }
    unsigned dim() const { return 1; }
    unsigned complexity() const;
    const Rat& window_lo() const { return window_lo_; }
    const Rat& window_hi() const { return window_hi_; }
    const Rat& scale() const { return scale_; }
    const Rat& slack() const { return slack_; }
    const std::vector<Int>& targets() const { return targets_; }

    bool contains_pair(const Point& a, const Point& b) const;

    // Zero sets of x -> conditions(p, x): the window and slack boundaries.
    std::vector<Poly> surfaces_for(const Point& p) const;

    // Polynomial/truth-table form; throws BudgetExceeded when 2^{#conditions}
    // exceeds max_table_bits.
    SemiAlgRelation to_semialg(unsigned max_table_bits = 24) const;

private:
    Rat window_lo_, window_hi_, scale_, slack_;
    std::vector<Int> targets_;
};

using PairRelation = std::variant<SemiAlgRelation, IntervalDistanceRelation>;

bool pair_in_relation(const PairRelation& r, const Point& a, const Point& b);
unsigned relation_complexity(const PairRelation& r);
unsigned relation_dim(const PairRelation& r);
// Zero sets of x -> f_j(p, x) for every defining condition.
std::vector<Poly> point_surfaces(const PairRelation& r, const Point& p);

// Base point set plus binary relations sharing its dimension.
struct RelationSystem {
    PointSet base;
    std::vector<PairRelation> relations;
};

void validate_relation_system(const RelationSystem& s);

struct SymmetryReport {
    bool symmetric = true;
    std::string counterexample;  // empty when symmetric
};

// Samples `trials` random k-subsets and compares membership across all k!
// orderings; reports the first violation.
SymmetryReport check_symmetric(const SemiAlgRelation& r, const PointSet& sample,
                               unsigned trials, std::uint64_t seed);

// File format: header "k d t", one polynomial per line (in k*d variables),
// then the truth table as a 0/1 string of length 2^{#polys}. Bit j of the
// row index is the indicator of "f_j >= 0".
SemiAlgRelation parse_relation(std::istream& in);
SemiAlgRelation parse_relation_text(const std::string& text);
void write_relation(std::ostream& out, const SemiAlgRelation& r);
std::string relation_to_string(const SemiAlgRelation& r);
SemiAlgRelation load_relation(const std::string& path);
void save_relation(const std::string& path, const SemiAlgRelation& r);

}  // namespace semialg
