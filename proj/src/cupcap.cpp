#include "semialg/cupcap.hpp"

#include <algorithm>
#include <map>

#include "semialg/errors.hpp"

namespace semialg {

int orientation(const Point& a, const Point& b, const Point& c) {
    Rat det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return sign_of(det);
}

PlanarConfig make_planar_config(PointSet pts) {
    if (pts.dim != 2) throw ContractViolation("planar config: dimension must be 2");
    validate_point_set(pts);
    std::map<Rat, std::size_t> by_x;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [it, fresh] = by_x.emplace(pts[i][0], i);
        if (!fresh)
            throw ContractViolation("planar config: points " + std::to_string(it->second) +
                                    " and " + std::to_string(i) + " share an x-coordinate");
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (orientation(pts[i], pts[j], pts[k]) == 0)
                    throw ContractViolation("planar config: points " + std::to_string(i) +
                                            ", " + std::to_string(j) + ", " +
                                            std::to_string(k) + " are collinear");
    PlanarConfig cfg;
    cfg.points = std::move(pts);
    cfg.general_position_checked = true;
    return cfg;
}

namespace {

struct XY {
    Rat x, y;
};

// scale x into [x_target_lo, x_target_lo + 1], keep y
std::vector<XY> normalize_x(const std::vector<XY>& pts, long x_target_lo) {
    Rat lo = pts[0].x, hi = pts[0].x;
    for (const XY& p : pts) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
    }
    Rat span = hi - lo;
    std::vector<XY> out;
    out.reserve(pts.size());
    for (const XY& p : pts) {
        Rat x = span == 0 ? Rat(0) : (p.x - lo) / span;
        out.push_back({x + Rat(x_target_lo), p.y});
    }
    return out;
}

Rat max_abs_slope(const std::vector<XY>& pts) {
    Rat best(0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i].x == pts[j].x) continue;
            Rat s = abs_rat((pts[j].y - pts[i].y) / (pts[j].x - pts[i].x));
            best = std::max(best, s);
        }
    return best;
}

Rat max_abs_y(const std::vector<XY>& pts) {
    Rat best(0);
    for (const XY& p : pts) best = std::max(best, abs_rat(p.y));
    return best;
}

std::vector<XY> cupcap_build(unsigned s, unsigned n) {
    if (s == 3) {
        // all-cap chain: any three points turn right, so no 3-cup
        std::vector<XY> out;
        for (unsigned i = 1; i <= n - 1; ++i)
            out.push_back({Rat(i), -Rat(static_cast<long>(i) * i)});
        return out;
    }
    if (n == 3) {
        std::vector<XY> out;
        for (unsigned i = 1; i <= s - 1; ++i)
            out.push_back({Rat(i), Rat(static_cast<long>(i) * i)});
        return out;
    }
    std::vector<XY> left = normalize_x(cupcap_build(s - 1, n), 0);   // x in [0,1]
    std::vector<XY> right = normalize_x(cupcap_build(s, n - 1), 2);  // x in [2,3]
    Rat slope_bound = std::max(max_abs_slope(left), max_abs_slope(right));
    Rat height = std::max(max_abs_y(left), max_abs_y(right));
    // raise the right part until every cross slope beats every internal one:
    // cross dx <= 3, so (lift - 2*height)/3 > slope_bound suffices
    Rat lift = Rat(3) * (slope_bound + 1) + Rat(2) * height + 1;
    std::vector<XY> out = left;
    for (XY p : right) out.push_back({p.x, p.y + lift});
    return out;
}

}  // namespace

PlanarConfig cupcap_extremal(unsigned s, unsigned n) {
    if (s < 3 || n < 3) throw ContractViolation("cupcap_extremal: s, n >= 3 required");
    std::vector<XY> pts = cupcap_build(s, n);
    PointSet ps;
    ps.dim = 2;
    for (const XY& p : pts) ps.points.push_back({p.x, p.y});
    return make_planar_config(std::move(ps));
}

namespace {

// longest cup/cap chain lengths with witness reconstruction; cup chains turn
// left (orientation +1), cap chains turn right
std::optional<std::vector<std::size_t>> chain_of_length(const PointSet& pts, int turn,
                                                        std::size_t want) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pts[a][0] < pts[b][0]; });

    if (want <= 1) return std::nullopt;
    if (n >= want && want <= 2) {
        std::vector<std::size_t> two{order[0], order[1]};
        return two;
    }
    if (n < want) return std::nullopt;

    // len[i][j]: longest chain ending with edge (order[i], order[j])
    std::vector<std::vector<std::size_t>> len(n, std::vector<std::size_t>(n, 0));
    std::vector<std::vector<std::size_t>> back(n, std::vector<std::size_t>(n, n));
    std::size_t best_i = n, best_j = n, best_len = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            len[i][j] = 2;
            for (std::size_t k = 0; k < i; ++k) {
                if (len[k][i] + 1 <= len[i][j]) continue;
                if (orientation(pts[order[k]], pts[order[i]], pts[order[j]]) == turn) {
                    len[i][j] = len[k][i] + 1;
                    back[i][j] = k;
                }
            }
            if (len[i][j] > best_len) {
                best_len = len[i][j];
                best_i = i;
                best_j = j;
            }
        }
    if (best_len < want) return std::nullopt;
    std::vector<std::size_t> chain;
    std::size_t i = best_i, j = best_j;
    chain.push_back(order[j]);
    chain.push_back(order[i]);
    while (back[i][j] != n) {
        std::size_t k = back[i][j];
        chain.push_back(order[k]);
        j = i;
        i = k;
    }
    std::reverse(chain.begin(), chain.end());
    if (chain.size() > want) chain.resize(want);  // prefix of a longer chain
    return chain;
}

std::size_t longest_chain_len(const PointSet& pts, int turn) {
    const std::size_t n = pts.size();
    if (n <= 2) return n;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pts[a][0] < pts[b][0]; });
    std::vector<std::vector<std::size_t>> len(n, std::vector<std::size_t>(n, 0));
    std::size_t best = 2;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            len[i][j] = 2;
            for (std::size_t k = 0; k < i; ++k)
                if (len[k][i] + 1 > len[i][j] &&
                    orientation(pts[order[k]], pts[order[i]], pts[order[j]]) == turn)
                    len[i][j] = len[k][i] + 1;
            best = std::max(best, len[i][j]);
        }
    return best;
}

}  // namespace

std::optional<CupCapWitness> find_cup_cap(const PlanarConfig& cfg, unsigned s, unsigned n) {
    if (!cfg.general_position_checked)
        throw ContractViolation("find_cup_cap: configuration not validated");
    if (auto cup = chain_of_length(cfg.points, +1, s)) {
        CupCapWitness w;
        w.is_cup = true;
        w.indices = *cup;
        for (std::size_t i = 0; i + 2 < w.indices.size(); ++i)
            if (orientation(cfg.points[w.indices[i]], cfg.points[w.indices[i + 1]],
                            cfg.points[w.indices[i + 2]]) != 1)
                throw ContractViolation("find_cup_cap: cup witness failed verification");
        return w;
    }
    if (auto cap = chain_of_length(cfg.points, -1, n)) {
        CupCapWitness w;
        w.is_cup = false;
        w.indices = *cap;
        for (std::size_t i = 0; i + 2 < w.indices.size(); ++i)
            if (orientation(cfg.points[w.indices[i]], cfg.points[w.indices[i + 1]],
                            cfg.points[w.indices[i + 2]]) != -1)
                throw ContractViolation("find_cup_cap: cap witness failed verification");
        return w;
    }
    return std::nullopt;
}

CupCapLengths longest_cup_cap(const PlanarConfig& cfg) {
    CupCapLengths out;
    out.cup = longest_chain_len(cfg.points, +1);
    out.cap = longest_chain_len(cfg.points, -1);
    return out;
}

}  // namespace semialg
