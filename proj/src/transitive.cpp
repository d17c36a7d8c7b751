#include "semialg/transitive.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "semialg/errors.hpp"
#include "semialg/rng.hpp"

namespace semialg {

namespace {

// membership in base-sorted order; extractors insist on symmetric relations
bool pair_in(const PairRelation& rel, const PointSet& pts, std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return pair_in_relation(rel, pts[a], pts[b]);
}

}  // namespace

std::optional<std::array<std::size_t, 3>> find_transitivity_violation(
    const PairRelation& rel, const PointSet& pts, const OrderedSubset& sub) {
    const auto& v = sub.order;
    const std::size_t n = v.size();
    // adjacency cache over positions
    std::vector<bool> adj(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj[i * n + j] = pair_in(rel, pts, v[i], v[j]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!adj[a * n + b]) continue;
            for (std::size_t c = b + 1; c < n; ++c)
                if (adj[b * n + c] && !adj[a * n + c])
                    return std::array<std::size_t, 3>{v[a], v[b], v[c]};
        }
    return std::nullopt;
}

std::size_t transitive_clique_number(const PointSet& pts, const OrderedSubset& v,
                                     const PairRelation& rel) {
    const auto& ord = v.order;
    const std::size_t n = ord.size();
    if (n == 0) return 0;
    std::vector<std::size_t> longest(n, 1);
    std::size_t best = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (pair_in(rel, pts, ord[j], ord[i]))
                longest[i] = std::max(longest[i], longest[j] + 1);
        best = std::max(best, longest[i]);
    }
    return best;
}

DilworthResult dilworth_independent(const PointSet& pts, const OrderedSubset& v,
                                    const PairRelation& rel, std::size_t omega) {
    if (auto bad = find_transitivity_violation(rel, pts, v)) {
        std::ostringstream os;
        os << "dilworth: relation not transitive on the ordering; violating triple ("
           << (*bad)[0] << ", " << (*bad)[1] << ", " << (*bad)[2] << ")";
        throw ContractViolation(os.str());
    }
    const auto& ord = v.order;
    const std::size_t n = ord.size();
    DilworthResult out;
    if (n == 0) return out;

    // Mirsky labels: length of the longest chain ending at each vertex
    std::vector<std::size_t> label(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (pair_in(rel, pts, ord[j], ord[i]))
                label[i] = std::max(label[i], label[j] + 1);
    out.chain_count = *std::max_element(label.begin(), label.end());
    if (out.chain_count > omega && omega > 0)
        throw ContractViolation("dilworth: clique number " +
                                std::to_string(out.chain_count) +
                                " exceeds the supplied bound " + std::to_string(omega));

    // largest label class is an independent set; ties to the lowest label
    std::map<std::size_t, std::size_t> class_size;
    for (std::size_t l : label) ++class_size[l];
    std::size_t best_label = 1, best_size = 0;
    for (const auto& [l, sz] : class_size)
        if (sz > best_size) {
            best_label = l;
            best_size = sz;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (label[i] == best_label) out.independent.order.push_back(ord[i]);

    // same-label vertices are never related: recheck rather than assume
    for (std::size_t i = 0; i < out.independent.order.size(); ++i)
        for (std::size_t j = i + 1; j < out.independent.order.size(); ++j)
            if (pair_in(rel, pts, out.independent.order[i], out.independent.order[j]))
                throw ContractViolation("dilworth: label class is not independent");
    return out;
}

namespace {

struct ExtractorState {
    const PointSet& pts;
    const std::vector<PairRelation>& relations;
    const TransitiveParams& params;
    std::vector<std::size_t> sizes_per_level;
    std::vector<std::string> notes;
};

std::vector<Poly> surfaces_of_point(const std::vector<PairRelation>& relations,
                                    const Point& p) {
    std::vector<Poly> out;
    for (const PairRelation& rel : relations)
        for (Poly& f : point_surfaces(rel, p)) out.push_back(std::move(f));
    return out;
}

std::vector<std::size_t> transitive_rec(ExtractorState& st,
                                        const std::vector<std::size_t>& indices,
                                        std::uint64_t seed) {
    st.sizes_per_level.push_back(indices.size());
    if (indices.empty()) return {};
    if (indices.size() <= st.params.recursion_floor) return {indices.front()};

    unsigned t = 2;
    for (const PairRelation& rel : st.relations)
        t = std::max(t, relation_complexity(rel));
    const std::size_t m = st.relations.size();

    // surfaces Z_{p,i,j}: zero sets of x -> f_{i,j}(p, x)
    std::vector<Surface> sigma;
    std::vector<std::vector<std::size_t>> surface_ids_of(indices.size());
    std::size_t next_id = 0;
    for (std::size_t pi = 0; pi < indices.size(); ++pi) {
        for (Poly& f : surfaces_of_point(st.relations, st.pts[indices[pi]])) {
            if (f.is_zero()) continue;  // contains every cell, excluded
            surface_ids_of[pi].push_back(next_id);
            sigma.push_back(Surface{std::move(f), next_id, 0});
            ++next_id;
        }
    }

    std::vector<std::size_t> p1;
    std::vector<bool> cell_crossed_by(sigma.size(), false);
    if (sigma.empty()) {
        // no surface separates anything: every membership is globally
        // constant in the second argument, split by halves
        p1.assign(indices.begin(), indices.begin() + (indices.size() + 1) / 2);
    } else {
        CuttingParams cp;
        Rat mt_sq = Rat(static_cast<long>(m * t)) * Rat(static_cast<long>(m * t));
        cp.r = std::min(mt_sq, Rat(static_cast<long>(sigma.size())));
        cp.backend = st.params.backend;
        cp.seed = derive_seed(seed, 0xC0F);
        cp.c1 = st.params.c1;
        cp.degree_cap = st.params.degree_cap;
        Cutting cut = build_cutting(sigma, cp, &st.pts);

        std::size_t best = cut.cells.size();
        std::size_t best_count = 0;
        for (std::size_t ci = 0; ci < cut.cells.size(); ++ci) {
            std::size_t cnt = 0;
            for (std::size_t idx : indices)
                if (cut.cells[ci].contains(st.pts[idx])) ++cnt;
            if (best == cut.cells.size() || cnt > best_count) {
                best = ci;
                best_count = cnt;
            }
        }
        for (std::size_t idx : indices)
            if (cut.cells[best].contains(st.pts[idx])) p1.push_back(idx);
        for (std::size_t sid : cut.crossing[best]) cell_crossed_by[sid] = true;
        if (p1.size() == indices.size()) {
            // single effective cell: force progress, the uniformity argument
            // holds with the full space as the cell
            p1.assign(indices.begin(), indices.begin() + (indices.size() + 1) / 2);
        }
    }

    // P2: points outside P1 none of whose surfaces cross the chosen cell
    std::vector<std::size_t> p2;
    {
        std::vector<bool> in_p1(st.pts.size(), false);
        for (std::size_t idx : p1) in_p1[idx] = true;
        for (std::size_t pi = 0; pi < indices.size(); ++pi) {
            std::size_t idx = indices[pi];
            if (in_p1[idx]) continue;
            bool clean = true;
            for (std::size_t sid : surface_ids_of[pi])
                if (cell_crossed_by[sid]) {
                    clean = false;
                    break;
                }
            if (clean) p2.push_back(idx);
        }
    }

    // P3: the largest common-sign-pattern class relative to p0 = min(P1)
    std::vector<std::size_t> p3;
    if (!p2.empty()) {
        std::size_t p0 = *std::min_element(p1.begin(), p1.end());
        std::vector<Poly> fams = surfaces_of_point(st.relations, st.pts[p0]);
        std::map<SignVec, std::vector<std::size_t>> classes;
        for (std::size_t idx : p2) {
            SignVec sv;
            sv.reserve(fams.size());
            for (const Poly& f : fams) sv.push_back(sign_of(f.eval(st.pts[idx])));
            classes[sv].push_back(idx);
        }
        std::size_t best_size = 0;
        for (const auto& [sv, members] : classes)
            if (members.size() > best_size) best_size = members.size();
        for (const auto& [sv, members] : classes)
            if (members.size() == best_size) {
                p3 = members;
                break;  // lexicographically smallest pattern wins ties
            }
    }

    std::vector<std::size_t> left = transitive_rec(st, p1, derive_seed(seed, 1));
    std::vector<std::size_t> right =
        p3.empty() ? std::vector<std::size_t>{} : transitive_rec(st, p3, derive_seed(seed, 2));
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

}  // namespace

TransitiveResult transitive_subset(const PointSet& pts,
                                   const std::vector<PairRelation>& relations,
                                   const TransitiveParams& params) {
    validate_point_set(pts);
    if (relations.size() < 2)
        throw ContractViolation("transitive_subset: needs m >= 2 relations");
    for (const PairRelation& rel : relations)
        if (relation_dim(rel) != pts.dim)
            throw ContractViolation("transitive_subset: relation dimension mismatch");

    // symmetry gate on a seeded sample; interval-distance relations are
    // symmetric by construction
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < relations.size(); ++i) {
        const auto* sr = std::get_if<SemiAlgRelation>(&relations[i]);
        if (!sr || pts.size() < 2) continue;
        SymmetryReport rep =
            check_symmetric(*sr, pts, params.symmetry_trials, derive_seed(params.seed, i));
        if (!rep.symmetric) {
            if (params.require_symmetric)
                throw ContractViolation("transitive_subset: relation " + std::to_string(i) +
                                        " failed the symmetry check: " + rep.counterexample);
            notes.push_back("relation " + std::to_string(i) +
                            " is not symmetric on the sample (" + rep.counterexample +
                            "); membership is evaluated in base order");
        }
    }

    ExtractorState st{pts, relations, params, {}, std::move(notes)};
    std::vector<std::size_t> all(pts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    TransitiveResult out;
    out.subset.order = transitive_rec(st, all, params.seed);
    out.report.sizes_per_level = std::move(st.sizes_per_level);
    out.report.notes = std::move(st.notes);
    out.report.output_size = out.subset.order.size();

    const double n = static_cast<double>(pts.size());
    const double logm = std::log2(static_cast<double>(relations.size()));
    out.report.target_size =
        params.c3 > 0 && logm > 0 ? std::pow(n, 1.0 / (params.c3 * logm)) : 1.0;
    out.report.target_met =
        static_cast<double>(out.report.output_size) >= out.report.target_size;
    if (out.report.output_size >= 2 && logm > 0) {
        // smallest c3 with |out| >= N^{1/(c3 log m)}
        out.report.measured_c3 =
            std::log2(n) / (std::log2(static_cast<double>(out.report.output_size)) * logm);
    }

    for (std::size_t i = 0; i < relations.size(); ++i)
        if (auto bad = find_transitivity_violation(relations[i], pts, out.subset)) {
            std::ostringstream os;
            os << "transitive_subset: output violates transitivity of relation " << i
               << " at triple (" << (*bad)[0] << ", " << (*bad)[1] << ", " << (*bad)[2]
               << ")";
            throw ContractViolation(os.str());
        }
    out.report.verified_transitive = true;
    return out;
}

EmptyInAllResult empty_in_all(const PointSet& pts,
                              const std::vector<PairRelation>& relations,
                              const std::vector<std::size_t>& clique_bounds,
                              const TransitiveParams& params) {
    if (!clique_bounds.empty() && clique_bounds.size() != relations.size())
        throw ContractViolation("empty_in_all: clique bound count mismatch");

    EmptyInAllResult out;
    TransitiveResult tr = transitive_subset(pts, relations, params);
    out.report.transitive = tr.report;

    OrderedSubset current = tr.subset;
    for (std::size_t i = 0; i < relations.size(); ++i) {
        std::size_t omega = clique_bounds.empty()
                                ? transitive_clique_number(pts, current, relations[i])
                                : clique_bounds[i];
        out.report.clique_bounds.push_back(omega);
        DilworthResult dil = dilworth_independent(pts, current, relations[i], omega);
        current = dil.independent;
    }
    out.subset = current;
    out.report.output_size = current.order.size();

    double denom = 1.0;
    for (std::size_t w : out.report.clique_bounds) denom *= static_cast<double>(w);
    out.report.target_size =
        denom > 0 ? out.report.transitive.target_size / denom : 0.0;

    for (std::size_t i = 0; i < relations.size(); ++i)
        for (std::size_t a = 0; a < current.order.size(); ++a)
            for (std::size_t b = a + 1; b < current.order.size(); ++b)
                if (pair_in_relation(relations[i], pts[std::min(current.order[a],
                                                                current.order[b])],
                                     pts[std::max(current.order[a], current.order[b])]))
                    throw ContractViolation(
                        "empty_in_all: output pair remains in relation " + std::to_string(i));
    out.report.verified_empty = true;
    return out;
}

}  // namespace semialg
