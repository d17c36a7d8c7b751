#pragma once

#include <optional>
#include <vector>

#include "semialg/pointset.hpp"

namespace semialg {

// Planar configuration in general position: distinct x-coordinates and no
// three collinear, checked exactly.
struct PlanarConfig {
    PointSet points;  // dim == 2
    bool general_position_checked = false;
};

// Throws naming the exact violation.
PlanarConfig make_planar_config(PointSet pts);

// sign of the cross product (b-a) x (c-a): +1 = left turn
int orientation(const Point& a, const Point& b, const Point& c);

// General-position set of C(n+s-4, s-2) points with no s-cup and no n-cap
// (classical recursion: extremal(s-1, n) far left-low, extremal(s, n-1) far
// right-high, cross slopes above every internal slope).
PlanarConfig cupcap_extremal(unsigned s, unsigned n);

struct CupCapWitness {
    bool is_cup = false;            // otherwise a cap
    std::vector<std::size_t> indices;  // x-sorted chain, verified by orientation
};

// Longest-chain dynamic program over x-sorted points: returns an s-cup or an
// n-cap when one exists; NotFound answers are optimal-by-DP, hence
// exhaustive-equivalent.
std::optional<CupCapWitness> find_cup_cap(const PlanarConfig& cfg, unsigned s, unsigned n);

// Longest cup and cap lengths (for tightness experiments).
struct CupCapLengths {
    std::size_t cup = 0, cap = 0;
};
CupCapLengths longest_cup_cap(const PlanarConfig& cfg);

}  // namespace semialg
