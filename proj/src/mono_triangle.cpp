#include "semialg/mono_triangle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "semialg/errors.hpp"
#include "semialg/rng.hpp"

namespace semialg {

const char* mono_mechanism_name(MonoMechanism m) {
    switch (m) {
        case MonoMechanism::OracleBase: return "oracle-base";
        case MonoMechanism::ScanA: return "scan-a";
        case MonoMechanism::ScanB: return "scan-b";
        case MonoMechanism::CrossScan: return "cross-scan";
        case MonoMechanism::Recursion: return "recursion";
    }
    return "?";
}

namespace {

struct MonoState {
    const RelationSystem& sys;
    const MonoFindConfig& config;
    MonoFindReport report;
    std::vector<std::vector<bool>> pair_in;  // per color, n*n membership
    std::size_t n = 0;

    bool in(std::size_t color, std::size_t a, std::size_t b) const {
        return pair_in[color][a * n + b];
    }

    void log(std::size_t depth, const std::string& msg) {
        report.trace.push_back(std::string(2 * depth, ' ') + msg);
    }

    MonoTriangle verified(std::size_t a, std::size_t b, std::size_t c,
                          std::size_t color) const {
        std::array<std::size_t, 3> t{a, b, c};
        std::sort(t.begin(), t.end());
        if (!in(color, t[0], t[1]) || !in(color, t[0], t[2]) || !in(color, t[1], t[2]))
            throw ContractViolation("find_mono_triangle: candidate failed verification");
        return MonoTriangle{t, color};
    }
};

std::optional<MonoTriangle> exhaustive_scan(MonoState& st,
                                            const std::vector<std::size_t>& pts,
                                            const std::vector<std::size_t>& colors) {
    for (std::size_t ai = 0; ai < pts.size(); ++ai)
        for (std::size_t bi = ai + 1; bi < pts.size(); ++bi)
            for (std::size_t ci = bi + 1; ci < pts.size(); ++ci)
                for (std::size_t col : colors) {
                    std::size_t a = pts[ai], b = pts[bi], c = pts[ci];
                    if (st.in(col, a, b) && st.in(col, a, c) && st.in(col, b, c))
                        return st.verified(a, b, c, col);
                }
    return std::nullopt;
}

// every triple with at least one vertex on each side of the split
std::optional<MonoTriangle> cross_scan(MonoState& st, const std::vector<std::size_t>& side_a,
                                       const std::vector<std::size_t>& side_b,
                                       const std::vector<std::size_t>& colors) {
    std::vector<std::size_t> all;
    all.insert(all.end(), side_a.begin(), side_a.end());
    all.insert(all.end(), side_b.begin(), side_b.end());
    std::sort(all.begin(), all.end());
    std::set<std::size_t> a_set(side_a.begin(), side_a.end());
    for (std::size_t x : side_a)
        for (std::size_t y : side_b)
            for (std::size_t col : colors) {
                std::size_t lo = std::min(x, y), hi = std::max(x, y);
                if (!st.in(col, lo, hi)) continue;
                for (std::size_t z : all) {
                    if (z == x || z == y) continue;
                    // avoid triple-counting 1-1-1 triples: insist z is on
                    // side b when both smaller cross pairs exist... any hit
                    // is returned immediately, so duplicates only cost time
                    if (st.in(col, std::min(z, x), std::max(z, x)) &&
                        st.in(col, std::min(z, y), std::max(z, y)))
                        return st.verified(x, y, z, col);
                }
            }
    return std::nullopt;
}

std::optional<MonoTriangle> find_rec(MonoState& st, std::vector<std::size_t> pts,
                                     std::vector<std::size_t> colors, std::uint64_t seed,
                                     std::size_t depth) {
    ++st.report.nodes;
    if (pts.size() < 3) return std::nullopt;
    if (pts.size() <= st.config.oracle_threshold || colors.size() <= 1) {
        st.log(depth, "exhaustive base: n = " + std::to_string(pts.size()) + ", colors = " +
                          std::to_string(colors.size()));
        auto hit = exhaustive_scan(st, pts, colors);
        if (hit && !st.report.found_by) st.report.found_by = MonoMechanism::OracleBase;
        return hit;
    }

    // surfaces Z_{i,j,p} for the active points and colors
    unsigned t = 2;
    for (std::size_t c : colors) t = std::max(t, relation_complexity(st.sys.relations[c]));
    std::vector<Surface> sigma;
    std::vector<std::vector<std::size_t>> surfaces_of(pts.size());
    std::size_t next_id = 0;
    unsigned max_deg = 0;
    for (std::size_t pi = 0; pi < pts.size(); ++pi)
        for (std::size_t c : colors)
            for (Poly& f : point_surfaces(st.sys.relations[c], st.sys.base[pts[pi]])) {
                if (f.is_zero()) continue;
                max_deg = std::max(max_deg, f.total_degree());
                surfaces_of[pi].push_back(next_id);
                sigma.push_back(Surface{std::move(f), next_id, 0});
                ++next_id;
            }

    std::vector<std::size_t> p1;
    std::vector<bool> crossed(sigma.size(), false);
    if (!sigma.empty()) {
        CuttingParams cp;
        Rat r_target = Rat(2) * Rat(static_cast<long>(t)) *
                       Rat(static_cast<long>(colors.size()));
        cp.r = std::min(r_target, Rat(static_cast<long>(sigma.size())));
        const unsigned d = st.sys.base.dim;
        cp.backend = d == 1 ? CuttingBackend::Exact1D
                            : (max_deg <= 1 ? CuttingBackend::Linear2D
                                            : CuttingBackend::Subdivision2D);
        cp.seed = derive_seed(seed, 0xA5);
        cp.c1 = st.config.c1;
        cp.degree_cap = st.config.degree_cap;
        Cutting cut = build_cutting(sigma, cp, &st.sys.base);

        std::size_t best = cut.cells.size(), best_count = 0;
        for (std::size_t ci = 0; ci < cut.cells.size(); ++ci) {
            std::size_t cnt = 0;
            for (std::size_t p : pts)
                if (cut.cells[ci].contains(st.sys.base[p])) ++cnt;
            if (best == cut.cells.size() || cnt > best_count) {
                best = ci;
                best_count = cnt;
            }
        }
        for (std::size_t p : pts)
            if (cut.cells[best].contains(st.sys.base[p])) p1.push_back(p);
        for (std::size_t sid : cut.crossing[best]) crossed[sid] = true;
    }
    if (p1.empty() || p1.size() == pts.size()) {
        st.log(depth, "no usable split; exhaustive over n = " + std::to_string(pts.size()));
        auto hit = exhaustive_scan(st, pts, colors);
        if (hit && !st.report.found_by) st.report.found_by = MonoMechanism::OracleBase;
        return hit;
    }

    // P2: points outside the cell whose surfaces all miss it; chi assigns the
    // first color covering the whole of point x P1
    std::set<std::size_t> p1_set(p1.begin(), p1.end());
    std::vector<std::size_t> p2;
    std::vector<std::size_t> chi(st.n, colors.size());
    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        std::size_t p = pts[pi];
        if (p1_set.count(p)) continue;
        bool clean = true;
        for (std::size_t sid : surfaces_of[pi])
            if (crossed[sid]) {
                clean = false;
                break;
            }
        if (!clean) continue;
        for (std::size_t c = 0; c < colors.size(); ++c) {
            bool all_in = true;
            for (std::size_t x : p1)
                if (!st.in(colors[c], std::min(p, x), std::max(p, x))) {
                    all_in = false;
                    break;
                }
            if (all_in) {
                chi[p] = c;
                break;
            }
        }
        if (chi[p] < colors.size()) p2.push_back(p);
    }

    // scan A: p in P2 against pairs of P1 in color chi(p)
    for (std::size_t p : p2)
        for (std::size_t ai = 0; ai < p1.size(); ++ai)
            for (std::size_t bi = ai + 1; bi < p1.size(); ++bi)
                if (st.in(colors[chi[p]], std::min(p1[ai], p1[bi]),
                          std::max(p1[ai], p1[bi]))) {
                    st.log(depth, "scan A hit");
                    if (!st.report.found_by) st.report.found_by = MonoMechanism::ScanA;
                    return st.verified(p, p1[ai], p1[bi], colors[chi[p]]);
                }

    std::set<std::size_t> image;
    for (std::size_t p : p2) image.insert(chi[p]);
    const double log_m = std::log2(static_cast<double>(colors.size()));
    const bool case1 = static_cast<double>(image.size()) > log_m;
    st.log(depth, "n = " + std::to_string(pts.size()) + ", colors = " +
                      std::to_string(colors.size()) + ", |P1| = " + std::to_string(p1.size()) +
                      ", |P2| = " + std::to_string(p2.size()) + ", m0 = " +
                      std::to_string(image.size()) + (case1 ? " (case 1)" : " (case 2)"));

    std::vector<std::size_t> inner, inner_colors;
    if (case1) {
        // scan A was exhaustive, so P1 pairs avoid every chi color
        inner = p1;
        for (std::size_t c = 0; c < colors.size(); ++c)
            if (!image.count(c)) inner_colors.push_back(colors[c]);
    } else if (!image.empty()) {
        // largest chi class and its fixed color
        std::size_t best_color = 0, best_size = 0;
        for (std::size_t c : image) {
            std::size_t sz = 0;
            for (std::size_t p : p2)
                if (chi[p] == c) ++sz;
            if (sz > best_size) {
                best_size = sz;
                best_color = c;
            }
        }
        std::vector<std::size_t> p3;
        for (std::size_t p : p2)
            if (chi[p] == best_color) p3.push_back(p);
        // scan B: a pair of P3 in the fixed color closes a triangle with any
        // point of P1
        for (std::size_t ai = 0; ai < p3.size(); ++ai)
            for (std::size_t bi = ai + 1; bi < p3.size(); ++bi)
                if (st.in(colors[best_color], std::min(p3[ai], p3[bi]),
                          std::max(p3[ai], p3[bi]))) {
                    st.log(depth, "scan B hit");
                    if (!st.report.found_by) st.report.found_by = MonoMechanism::ScanB;
                    return st.verified(p3[ai], p3[bi], p1.front(), colors[best_color]);
                }
        inner = p3;
        for (std::size_t c = 0; c < colors.size(); ++c)
            if (c != best_color) inner_colors.push_back(colors[c]);
    }
    if (inner.empty()) {
        inner = p1;
        inner_colors = colors;
    }

    if (auto hit = find_rec(st, inner, inner_colors, derive_seed(seed, 1), depth + 1)) {
        if (!st.report.found_by) st.report.found_by = MonoMechanism::Recursion;
        return hit;
    }
    std::set<std::size_t> inner_set(inner.begin(), inner.end());
    std::vector<std::size_t> rest;
    for (std::size_t p : pts)
        if (!inner_set.count(p)) rest.push_back(p);
    if (auto hit = find_rec(st, rest, colors, derive_seed(seed, 2), depth + 1)) {
        if (!st.report.found_by) st.report.found_by = MonoMechanism::Recursion;
        return hit;
    }
    if (auto hit = cross_scan(st, inner, rest, colors)) {
        st.log(depth, "cross-scan hit");
        if (!st.report.found_by) st.report.found_by = MonoMechanism::CrossScan;
        return hit;
    }
    return std::nullopt;
}

}  // namespace

MonoFindResult find_mono_triangle(const RelationSystem& sys, const MonoFindConfig& config,
                                  std::uint64_t seed) {
    validate_relation_system(sys);
    const std::size_t n = sys.base.size();
    Int cube = Int(static_cast<long>(n));
    cube = cube * cube * cube;
    if (cube > Int(config.budget.max_tuple_evals))
        throw BudgetExceeded("find_mono_triangle: |P|^3 exceeds the budget");

    MonoState st{sys, config, {}, pair_membership_tables(sys), n};

    // coverage is a hard precondition: the argument colors every pair
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool covered = false;
            for (const auto& t : st.pair_in)
                if (t[i * n + j]) {
                    covered = true;
                    break;
                }
            if (!covered)
                throw ContractViolation("find_mono_triangle: pair (" + std::to_string(i) +
                                        "," + std::to_string(j) + ") is in no relation");
        }

    std::vector<std::size_t> pts(n), colors(sys.relations.size());
    for (std::size_t i = 0; i < n; ++i) pts[i] = i;
    for (std::size_t c = 0; c < colors.size(); ++c) colors[c] = c;

    MonoFindResult out;
    out.triangle = find_rec(st, pts, colors, seed, 0);
    out.report = std::move(st.report);
    return out;
}

}  // namespace semialg
