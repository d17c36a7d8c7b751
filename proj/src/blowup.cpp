#include "semialg/blowup.hpp"

#include <algorithm>

#include "semialg/errors.hpp"
#include "semialg/rng.hpp"

namespace semialg {

BlowupSystem blowup(const SumFreePartition& base, unsigned levels, const Int& point_budget) {
    validate_sum_free_partition(base);
    if (levels < 1) throw ContractViolation("blowup: levels >= 1 required");
    const long copies = base.n_max + 1;

    Int total = 1;
    for (unsigned j = 0; j < levels; ++j) total *= copies;
    if (total > point_budget)
        throw BudgetExceeded("blowup: " + total.get_str() + " points exceed the budget");

    BlowupSystem sys;
    sys.levels = levels;
    sys.base = base;

    // level 1: the induced coloring of {1..n+1}
    RelationSystem level1 = schur_coloring(base);
    sys.points = level1.base;
    for (auto& rel : level1.relations)
        sys.relations.push_back(std::get<IntervalDistanceRelation>(rel));
    sys.c_schedule.push_back(Int(1));

    for (unsigned level = 2; level <= levels; ++level) {
        Rat max_pt(0);
        for (const Point& p : sys.points.points) max_pt = std::max(max_pt, p[0]);
        // C > (5000 * max P_{l-1})^2, integral so all points stay integers
        Int c_val = floor_rat(pow_rat(Rat(5000) * max_pt, 2)) + 1;
        sys.c_schedule.push_back(c_val);

        std::vector<Point> next;
        for (long i = 1; i <= copies; ++i) {
            Rat shift = Rat(c_val) * i;
            for (const Point& p : sys.points.points) next.push_back({p[0] + shift});
        }
        sys.points.points = std::move(next);

        for (const auto& cls : sys.base.classes) {
            std::vector<Int> targets;
            for (long v : cls) targets.emplace_back(v);
            sys.relations.emplace_back(IntervalDistanceRelation(
                Rat(c_val) / 2, Rat(copies + 1) * Rat(c_val), Rat(c_val),
                make_rat(1, 1000), std::move(targets)));
        }
    }
    validate_point_set(sys.points);
    return sys;
}

RelationSystem to_relation_system(const BlowupSystem& sys) {
    RelationSystem out;
    out.base = sys.points;
    for (const auto& rel : sys.relations) out.relations.emplace_back(rel);
    return out;
}

BlowupVerification verify_blowup(const BlowupSystem& sys, const SearchBudget& budget,
                                 std::uint64_t seed) {
    BlowupVerification out;
    RelationSystem rs = to_relation_system(sys);
    const std::size_t n = rs.base.size();

    auto tables = pair_membership_tables(rs);
    out.coverage_ok = true;
    for (std::size_t i = 0; i < n && out.coverage_ok; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool covered = false;
            for (const auto& t : tables)
                if (t[i * n + j]) {
                    covered = true;
                    break;
                }
            if (!covered) {
                out.coverage_ok = false;
                break;
            }
        }

    Int cube = Int(static_cast<long>(n));
    cube = cube * cube * cube;
    out.exhaustive = cube <= Int(budget.max_tuple_evals);
    auto check_triple = [&](std::size_t i, std::size_t j, std::size_t l) -> bool {
        for (std::size_t c = 0; c < tables.size(); ++c)
            if (tables[c][i * n + j] && tables[c][i * n + l] && tables[c][j * n + l]) {
                out.witness = MonoTriangle{{i, j, l}, c};
                return true;
            }
        return false;
    };
    if (out.exhaustive) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t l = j + 1; l < n; ++l) {
                    ++out.triples_checked;
                    if (check_triple(i, j, l)) {
                        out.triangle_free = false;
                        return out;
                    }
                }
        out.triangle_free = true;
        return out;
    }
    // sampled mode, clearly flagged
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::uint64_t trial = 0; trial < budget.max_tuple_evals / 8; ++trial) {
        std::array<std::size_t, 3> t{pick(rng), pick(rng), pick(rng)};
        std::sort(t.begin(), t.end());
        if (t[0] == t[1] || t[1] == t[2]) continue;
        ++out.triples_checked;
        if (check_triple(t[0], t[1], t[2])) {
            out.triangle_free = false;
            return out;
        }
    }
    out.triangle_free = true;
    return out;
}

InvarianceReport verify_translation_invariance(const RelationSystem& sys,
                                               std::span<const Rat> shifts,
                                               std::size_t sample_pairs,
                                               std::uint64_t seed) {
    InvarianceReport out;
    const std::size_t n = sys.base.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t all_pairs = n * (n - 1) / 2;
    if (all_pairs <= sample_pairs) {
        out.exhaustive = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    } else {
        Rng rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        while (pairs.size() < sample_pairs) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i != j) pairs.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    for (const auto& [i, j] : pairs) {
        ++out.pairs_checked;
        for (const Rat& s : shifts) {
            Point a = sys.base[i], b = sys.base[j];
            Point as = a, bs = b;
            for (std::size_t k = 0; k < as.size(); ++k) {
                as[k] += s;
                bs[k] += s;
            }
            for (std::size_t c = 0; c < sys.relations.size(); ++c) {
                bool before = pair_in_relation(sys.relations[c], a, b);
                bool after = pair_in_relation(sys.relations[c], as, bs);
                if (before != after) {
                    out.invariant = false;
                    out.violation = "relation " + std::to_string(c) + " changes on pair (" +
                                    std::to_string(i) + "," + std::to_string(j) +
                                    ") under shift " + rat_to_string(s);
                    return out;
                }
            }
        }
    }
    return out;
}

}  // namespace semialg
