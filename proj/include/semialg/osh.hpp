#pragma once

#include <optional>
#include <vector>

#include "semialg/relation.hpp"

namespace semialg {

// Hyperplanes a_1 x_1 + ... + a_d x_d = b with rational entries; general
// position = every d of them meet in a single point, all such points
// distinct, and (for the one-sided questions) no vertex on x_d = 0.
struct HyperplaneFamily {
    unsigned dim = 2;
    std::vector<std::vector<Rat>> planes;  // d coefficients then the offset b
    std::size_t size() const { return planes.size(); }
};

// File format: the point-set format with d+1 rationals per line.
HyperplaneFamily hyperplane_family_from_points(const PointSet& ps);
PointSet hyperplane_family_to_points(const HyperplaneFamily& h);

// Exact solve of the d x d system given by the planes; nullopt on a singular
// subset (general-position violation).
std::optional<Point> intersection_point(const HyperplaneFamily& h,
                                        const std::vector<std::size_t>& subset);

// Throws naming the violating subset; also rejects vertices on x_d = 0.
void check_general_position(const HyperplaneFamily& h, std::size_t max_subsets = 1000000);

// Duals h* = (a_1,...,a_d,b) in R^{d+1} plus the arity-d relation "the
// intersection point of the d planes has positive last coordinate", encoded
// through the Cramer determinant product det(A_d) * det(A) > 0.
struct DualizedFamily {
    PointSet duals;          // dim d+1
    SemiAlgRelation above;   // arity d over the duals
};

DualizedFamily dualize_hyperplanes(const HyperplaneFamily& h);

struct OneSidedWitness {
    bool above = false;                 // all vertices above (true) or below
    std::vector<std::size_t> indices;   // the subfamily
};

struct OshResult {
    std::optional<OneSidedWitness> witness;
    bool exhaustive = false;      // NotFound is certified when set
    bool used_reduction = false;  // d = 2 monotone-subsequence path
};

// Finds s planes whose pairwise-d-wise vertices all lie above x_d = 0, or n
// planes all below. d = 2 uses the monotone-subsequence correspondence when
// every slope has the same sign, with an exhaustive cross-check path for the
// rest; d >= 3 searches exhaustively within the budget. Witnesses are always
// re-verified by direct exact solves.
OshResult osh_extract(const HyperplaneFamily& h, unsigned s, unsigned n,
                      std::size_t budget = 2000000);

// The d = 2 lines dual to a real sequence: line i has slope m_i > 0 (strictly
// increasing) and passes through (-v_i, 0), so pairs meet above x_2 = 0
// exactly when v is decreasing; used to realize extremal OSH families.
HyperplaneFamily lines_from_sequence(const std::vector<Rat>& v);

}  // namespace semialg
