#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "semialg/rational.hpp"

namespace semialg {

// Ordered sequence of pairwise-distinct points in R^d. The stored order is
// significant: several extractors consume or produce index orderings.
struct PointSet {
    unsigned dim = 1;
    std::vector<Point> points;
    std::vector<std::string> labels;  // optional; empty or one per point

    std::size_t size() const { return points.size(); }
    const Point& operator[](std::size_t i) const { return points[i]; }
};

// Throws ContractViolation when dimensions disagree or points repeat.
void validate_point_set(const PointSet& ps);

// File format: first line "d N", then one point per line as d rationals.
PointSet parse_point_set(std::istream& in);
PointSet parse_point_set_text(const std::string& text);
void write_point_set(std::ostream& out, const PointSet& ps);
std::string point_set_to_string(const PointSet& ps);

PointSet load_point_set(const std::string& path);
void save_point_set(const std::string& path, const PointSet& ps);

// Convenience for 1-D instances.
PointSet point_set_1d(const std::vector<Rat>& xs);

}  // namespace semialg
