#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "semialg/interval.hpp"
#include "semialg/pointset.hpp"
#include "semialg/poly.hpp"
#include "semialg/sturm.hpp"

namespace semialg {

// Zero set Z = {x : poly(x) = 0} with a doubling counter; the surface's
// weight is 2^weight_exp. Identically-zero polynomials are excluded from
// cuttings with a warning (they contain every cell).
struct Surface {
    Poly poly;
    std::size_t id = 0;
    unsigned weight_exp = 0;
};

Int surface_weight(const Surface& s);
Int total_surface_weight(std::span<const Surface> sigma);

// ---- cells ------------------------------------------------------------

// 1-D cell: an interval (possibly a single point, possibly unbounded).
using Interval1D = RatInterval;

struct LineFn {
    Rat slope, offset;
    Rat at(const Rat& x) const { return slope * x + offset; }
};

// { (x,y) : x in xr, lower(x) <= y < upper(x) }, either bound optional.
struct Trapezoid2D {
    RatInterval xr;
    std::optional<LineFn> lower, upper;
};

// Axis box [x_lo,x_hi) x [y_lo,y_hi); `complement` marks the one unbounded
// cell outside the declared root box of a subdivision cutting.
struct Box2D {
    Rat x_lo, x_hi, y_lo, y_hi;
    bool complement = false;
};

struct Cell {
    std::size_t id = 0;
    std::variant<Interval1D, Trapezoid2D, Box2D> geom;

    bool contains(const Point& p) const;
    unsigned dim() const { return std::holds_alternative<Interval1D>(geom) ? 1 : 2; }
    std::string describe() const;
};

// ---- crossing tests ----------------------------------------------------

// Cached exact root data for one surface polynomial (1-D backend); refines
// its isolating intervals on demand to answer containment queries exactly.
class SurfaceRoots {
public:
    SurfaceRoots(const Poly& f, unsigned degree_cap);
    bool identically_zero() const { return zero_; }
    // Is some root of f inside the interval (as a point set)?
    bool any_root_in(const RatInterval& iv) const;
    // -1 / 0 / +1: the idx-th root relative to the rational point x.
    int root_vs(std::size_t idx, const Rat& x) const;
    std::size_t count() const { return zero_ ? 0 : roots_.size(); }
    const RootInterval& root(std::size_t i) const { return roots_[i]; }

private:
    bool zero_ = false;
    UniPoly squarefree_;
    std::optional<SturmChain> chain_;
    mutable std::vector<RootInterval> roots_;
};

// Exact for interval cells and for trapezoids with linear surfaces;
// conservative (never under-reports) for boxes with any supported degree.
// A surface whose zero set contains the cell does not cross it.
bool crosses(const Surface& z, const Cell& c, unsigned degree_cap = 8);

// ---- cuttings ----------------------------------------------------------

enum class CuttingBackend { Exact1D, Linear2D, Subdivision2D };

const char* backend_name(CuttingBackend b);
CuttingBackend parse_backend(const std::string& name);

struct CuttingParams {
    Rat r = Rat(1);
    CuttingBackend backend = CuttingBackend::Exact1D;
    std::uint64_t seed = 0;
    Rat c1 = Rat(8);        // reporting ceiling: cells vs c1 * r^{2d}
    unsigned max_retries = 20;
    unsigned depth_cap = 12;
    unsigned degree_cap = 8;
    // When set, the 1-D builder balances root weight over up to this many
    // cells instead of cutting as lazily as the crossing cap allows, and the
    // 2-D builder caps its sample so the decomposition stays below it.
    std::optional<std::size_t> max_cells;
    std::optional<std::array<Rat, 4>> box;  // x_lo, x_hi, y_lo, y_hi override
};

struct Cutting {
    unsigned dim = 1;
    std::vector<Cell> cells;
    std::vector<std::vector<std::size_t>> crossing;  // per cell, surface ids
    CuttingParams params;
    std::vector<std::string> warnings;
    Int total_weight = 0;
    Rat max_crossing_weight = Rat(0);     // heaviest cell crossing load
    std::size_t cell_of(const Point& p) const;  // unique containing cell

    Rat measured_c1() const;  // minimal c1 with |cells| <= c1 * r^{2d}
};

// Decomposes R^d (d = 1 or 2) so that the surfaces crossing any cell have
// total weight at most W/r, W = total weight of sigma. pts is required by
// the subdivision backend (root box) unless params.box is given.
Cutting build_cutting(std::span<const Surface> sigma, const CuttingParams& params,
                      const PointSet* pts = nullptr);

struct CuttingReport {
    bool disjoint_ok = true;
    bool coverage_ok = true;
    bool crossing_ok = true;  // stored lists match independent recomputation
    std::size_t max_crossings = 0;
    Rat max_crossing_weight = Rat(0);
    Rat measured_c1 = Rat(0);
    std::vector<std::string> issues;
    bool ok() const { return disjoint_ok && coverage_ok && crossing_ok; }
};

// Rechecks pairwise cell disjointness, unique coverage of every point of
// pts, and every crossing list against an independent crosses() pass.
CuttingReport verify_cutting(std::span<const Surface> sigma, const Cutting& k,
                             const PointSet& pts);

}  // namespace semialg
