#include "semialg/osh.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "semialg/errors.hpp"
#include "semialg/es_sequences.hpp"
#include "semialg/oracles.hpp"

namespace semialg {

HyperplaneFamily hyperplane_family_from_points(const PointSet& ps) {
    if (ps.dim < 2)
        throw ContractViolation("hyperplane family: need d+1 >= 2 entries per line");
    HyperplaneFamily h;
    h.dim = ps.dim - 1;
    h.planes = ps.points;
    return h;
}

PointSet hyperplane_family_to_points(const HyperplaneFamily& h) {
    PointSet ps;
    ps.dim = h.dim + 1;
    ps.points = h.planes;
    return ps;
}

std::optional<Point> intersection_point(const HyperplaneFamily& h,
                                        const std::vector<std::size_t>& subset) {
    const unsigned d = h.dim;
    if (subset.size() != d)
        throw ContractViolation("intersection_point: subset size must equal d");
    // Gaussian elimination over Q
    std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d + 1));
    for (unsigned i = 0; i < d; ++i) {
        const auto& plane = h.planes[subset[i]];
        for (unsigned j = 0; j < d; ++j) m[i][j] = plane[j];
        m[i][d] = plane[d];
    }
    for (unsigned col = 0; col < d; ++col) {
        unsigned pivot = col;
        while (pivot < d && m[pivot][col] == 0) ++pivot;
        if (pivot == d) return std::nullopt;  // singular
        std::swap(m[col], m[pivot]);
        for (unsigned row = 0; row < d; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rat factor = m[row][col] / m[col][col];
            for (unsigned j = col; j <= d; ++j) m[row][j] -= factor * m[col][j];
        }
    }
    Point x(d);
    for (unsigned i = 0; i < d; ++i) x[i] = m[i][d] / m[i][i];
    return x;
}

void check_general_position(const HyperplaneFamily& h, std::size_t max_subsets) {
    const unsigned d = h.dim;
    if (h.size() < d) return;
    if (binomial(h.size(), d) > Int(static_cast<long>(max_subsets)))
        throw BudgetExceeded("check_general_position: too many d-subsets");
    std::set<Point> vertices;
    std::vector<std::size_t> subset(d);
    std::iota(subset.begin(), subset.end(), 0);
    auto describe = [](const std::vector<std::size_t>& s) {
        std::string out = "{";
        for (std::size_t i : s) out += " " + std::to_string(i);
        return out + " }";
    };
    for (;;) {
        auto pt = intersection_point(h, subset);
        if (!pt)
            throw ContractViolation("general position: planes " + describe(subset) +
                                    " do not meet in a single point");
        if ((*pt)[d - 1] == 0)
            throw ContractViolation("general position: vertex of " + describe(subset) +
                                    " lies on the x_d = 0 hyperplane");
        if (!vertices.insert(*pt).second)
            throw ContractViolation("general position: vertex of " + describe(subset) +
                                    " coincides with another vertex");
        // next d-subset in lexicographic order
        int i = static_cast<int>(d) - 1;
        while (i >= 0 && subset[i] == h.size() - d + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (unsigned j = i + 1; j < d; ++j) subset[j] = subset[j - 1] + 1;
    }
}

namespace {

// symbolic d x d determinant with Poly entries
Poly poly_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t d = m.size();
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    Poly out(m[0][0].num_vars());
    do {
        int sign = 1;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Poly term = Poly::constant(m[0][0].num_vars(), Rat(sign));
        for (std::size_t i = 0; i < d; ++i) term = term * m[i][perm[i]];
        out += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

DualizedFamily dualize_hyperplanes(const HyperplaneFamily& h) {
    const unsigned d = h.dim;
    PointSet duals;
    duals.dim = d + 1;
    duals.points = h.planes;
    validate_point_set(duals);

    // variables: dual point i contributes coordinates i*(d+1) .. i*(d+1)+d
    const unsigned nv = d * (d + 1);
    auto var = [&](unsigned pt, unsigned coord) {
        return Poly::variable(nv, pt * (d + 1) + coord);
    };
    std::vector<std::vector<Poly>> a(d, std::vector<Poly>(d, Poly(nv)));
    std::vector<std::vector<Poly>> a_last(d, std::vector<Poly>(d, Poly(nv)));
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
            a[i][j] = var(i, j);
            a_last[i][j] = (j == d - 1) ? var(i, d) : var(i, j);
        }
    // x_d = det(A_last)/det(A) > 0 <=> g = det(A_last) * det(A) > 0
    Poly g = poly_det(a_last) * poly_det(a);
    out.above = SemiAlgRelation(d, d + 1, {-g}, {true, false}, 2 * d);
    return out;
}

namespace {

// every d-subset's vertex strictly on one side; exact direct solves
bool one_sided(const HyperplaneFamily& h, const std::vector<std::size_t>& family,
               bool above, std::size_t& solves) {
    const unsigned d = h.dim;
    if (family.size() < d) return true;
    std::vector<std::size_t> subset(d);
    std::vector<std::size_t> pick(d);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        for (unsigned j = 0; j < d; ++j) subset[j] = family[pick[j]];
        ++solves;
        auto pt = intersection_point(h, subset);
        if (!pt) throw ContractViolation("one_sided: singular subset");
        int sgn = sign_of((*pt)[d - 1]);
        if (above ? sgn <= 0 : sgn >= 0) return false;
        int i = static_cast<int>(d) - 1;
        while (i >= 0 && pick[i] == family.size() - d + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (unsigned j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
    return true;
}

// incremental exhaustive search for a one-sided subfamily of the given size
std::optional<std::vector<std::size_t>> search_one_sided(const HyperplaneFamily& h,
                                                         std::size_t want, bool above,
                                                         std::size_t budget,
                                                         std::size_t& solves) {
    const unsigned d = h.dim;
    std::vector<std::size_t> chosen;
    auto compatible = [&](std::size_t cand) {
        if (chosen.size() + 1 < d) return true;
        // all new d-subsets include cand and d-1 of chosen
        std::vector<std::size_t> pick(d - 1);
        std::iota(pick.begin(), pick.end(), 0);
        if (chosen.size() < d - 1) return true;
        for (;;) {
            std::vector<std::size_t> subset;
            for (unsigned j = 0; j + 1 < d; ++j) subset.push_back(chosen[pick[j]]);
            subset.push_back(cand);
            if (++solves > budget)
                throw BudgetExceeded("osh_extract: solve budget exhausted");
            auto pt = intersection_point(h, subset);
            if (!pt) throw ContractViolation("osh_extract: singular subset");
            int sgn = sign_of((*pt)[d - 1]);
            if (above ? sgn <= 0 : sgn >= 0) return false;
            int i = static_cast<int>(d) - 2;
            while (i >= 0 && pick[i] == chosen.size() - (d - 1) + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (unsigned j = i + 1; j + 1 < d; ++j) pick[j] = pick[j - 1] + 1;
        }
        return true;
    };
    std::function<bool(std::size_t)> extend = [&](std::size_t from) {
        if (chosen.size() == want) return true;
        std::size_t need = want - chosen.size();
        for (std::size_t c = from; c + need <= h.size(); ++c) {
            if (!compatible(c)) continue;
            chosen.push_back(c);
            if (extend(c + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (extend(0)) return chosen;
    return std::nullopt;
}

struct Line2 {
    Rat slope, v;  // v = intercept / slope
};

}  // namespace

OshResult osh_extract(const HyperplaneFamily& h, unsigned s, unsigned n,
                      std::size_t budget) {
    check_general_position(h);
    OshResult out;
    std::size_t solves = 0;

    if (h.dim == 2) {
        // monotone-subsequence correspondence applies when every line has a
        // well-defined nonzero slope and all slopes share a sign
        bool applicable = true;
        std::vector<Line2> lines(h.size());
        for (std::size_t i = 0; i < h.size() && applicable; ++i) {
            const auto& p = h.planes[i];  // a1 x + a2 y = b
            if (p[1] == 0 || p[0] == 0) {
                applicable = false;
                break;
            }
            lines[i].slope = -p[0] / p[1];
            lines[i].v = -p[2] / p[0];
        }
        if (applicable) {
            int first_sign = sign_of(lines[0].slope);
            for (const Line2& l : lines)
                if (sign_of(l.slope) != first_sign) {
                    applicable = false;
                    break;
                }
        }
        if (applicable) {
            std::vector<std::size_t> order(h.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return lines[a].slope < lines[b].slope;
            });
            std::vector<Rat> vseq;
            for (std::size_t i : order) vseq.push_back(lines[i].v);
            MonotoneWitness w = longest_monotone(vseq);
            out.used_reduction = true;
            out.exhaustive = true;
            if (w.dec_len >= s) {
                OneSidedWitness ws;
                ws.above = true;
                for (std::size_t k = 0; k < s; ++k) ws.indices.push_back(order[w.dec[k]]);
                std::sort(ws.indices.begin(), ws.indices.end());
                if (!one_sided(h, ws.indices, true, solves))
                    throw ContractViolation("osh_extract: reduction witness failed solves");
                out.witness = std::move(ws);
            } else if (w.inc_len >= n) {
                OneSidedWitness ws;
                ws.above = false;
                for (std::size_t k = 0; k < n; ++k) ws.indices.push_back(order[w.inc[k]]);
                std::sort(ws.indices.begin(), ws.indices.end());
                if (!one_sided(h, ws.indices, false, solves))
                    throw ContractViolation("osh_extract: reduction witness failed solves");
                out.witness = std::move(ws);
            }
            return out;
        }
    }

    // exhaustive search, above first
    if (auto above = search_one_sided(h, s, true, budget, solves)) {
        if (!one_sided(h, *above, true, solves))
            throw ContractViolation("osh_extract: witness failed verification");
        out.witness = OneSidedWitness{true, *above};
        out.exhaustive = true;
        return out;
    }
    if (auto below = search_one_sided(h, n, false, budget, solves)) {
        if (!one_sided(h, *below, false, solves))
            throw ContractViolation("osh_extract: witness failed verification");
        out.witness = OneSidedWitness{false, *below};
        out.exhaustive = true;
        return out;
    }
    out.exhaustive = true;
    return out;
}

HyperplaneFamily lines_from_sequence(const std::vector<Rat>& v) {
    std::set<Rat> dedup(v.begin(), v.end());
    if (dedup.size() != v.size())
        throw ContractViolation("lines_from_sequence: values must be distinct");
    const std::size_t n = v.size();
    for (unsigned offset = 0; offset < 64; ++offset) {
        HyperplaneFamily h;
        h.dim = 2;
        for (std::size_t i = 0; i < n; ++i) {
            // slope m > 0, passing through (-v_i, 0): -m x + y = m v_i
            Rat m = Rat(static_cast<long>(i + 1)) +
                    Rat(static_cast<long>(offset)) * Rat(static_cast<long>(n));
            h.planes.push_back({-m, Rat(1), m * v[i]});
        }
        try {
            check_general_position(h);
            return h;
        } catch (const ContractViolation&) {
            // three concurrent lines for this slope schedule; shift and retry
        }
    }
    throw RetriesExhausted("lines_from_sequence: no slope schedule gave general position");
}

}  // namespace semialg
