#include "semialg/oracles.hpp"

#include <string>

#include "semialg/errors.hpp"

namespace semialg {

Int binomial(std::size_t n, std::size_t k) {
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

namespace {

// Backtracking search shared by the clique and independent-set oracles.
// `want_in` selects whether induced tuples must be in the relation (clique)
// or out of it (independent set).
class SubsetSearch {
public:
    SubsetSearch(const SemiAlgRelation& r, const PointSet& pts, bool want_in,
                 const SearchBudget& budget)
        : r_(r), pts_(pts), want_in_(want_in), budget_(budget) {}

    std::optional<IndexSubset> run(std::size_t target) {
        if (target == 0) return IndexSubset{};
        if (target < r_.arity()) {
            // no induced k-tuple exists, any subset qualifies
            if (target > pts_.size()) return std::nullopt;
            IndexSubset s;
            for (std::size_t i = 0; i < target; ++i) s.push_back(i);
            return s;
        }
        if (target > pts_.size()) return std::nullopt;
        if (binomial(pts_.size(), target) > budget_.max_subsets)
            throw BudgetExceeded("subset search: C(" + std::to_string(pts_.size()) + "," +
                                 std::to_string(target) + ") exceeds the subset budget");
        chosen_.clear();
        target_ = target;
        IndexSubset out;
        return extend(0) ? std::optional<IndexSubset>(chosen_) : std::nullopt;
    }

private:
    bool extend(std::size_t next) {
        if (chosen_.size() == target_) return true;
        std::size_t need = target_ - chosen_.size();
        for (std::size_t i = next; i + need <= pts_.size(); ++i) {
            if (compatible(i)) {
                chosen_.push_back(i);
                if (extend(i + 1)) return true;
                chosen_.pop_back();
            }
        }
        return false;
    }

    // every induced k-tuple that includes point i must have the wanted
    // membership; only tuples formed with already-chosen points are new
    bool compatible(std::size_t i) {
        unsigned k = r_.arity();
        if (chosen_.size() + 1 < k) return true;
        picked_.assign(k - 1, 0);
        return check_combinations(0, 0, i);
    }

    bool check_combinations(std::size_t start, unsigned depth, std::size_t new_idx) {
        unsigned k = r_.arity();
        if (depth == k - 1) {
            std::vector<Point> tuple;
            tuple.reserve(k);
            for (unsigned j = 0; j < k - 1; ++j) tuple.push_back(pts_[chosen_[picked_[j]]]);
            tuple.push_back(pts_[new_idx]);  // chosen_ is increasing, new index largest
            if (++evals_ > budget_.max_tuple_evals)
                throw BudgetExceeded("subset search: tuple evaluation budget exhausted");
            return r_.contains(tuple) == want_in_;
        }
        for (std::size_t i = start; i < chosen_.size(); ++i) {
            picked_[depth] = i;
            if (!check_combinations(i + 1, depth + 1, new_idx)) return false;
        }
        return true;
    }

    const SemiAlgRelation& r_;
    const PointSet& pts_;
    bool want_in_;
    SearchBudget budget_;
    std::size_t target_ = 0;
    IndexSubset chosen_;
    std::vector<std::size_t> picked_;
    std::uint64_t evals_ = 0;
};

}  // namespace

std::optional<IndexSubset> brute_force_independent(const SemiAlgRelation& r,
                                                   const PointSet& pts, std::size_t target,
                                                   const SearchBudget& budget) {
    return SubsetSearch(r, pts, /*want_in=*/false, budget).run(target);
}

std::optional<IndexSubset> brute_force_clique(const SemiAlgRelation& r, const PointSet& pts,
                                              std::size_t target, const SearchBudget& budget) {
    return SubsetSearch(r, pts, /*want_in=*/true, budget).run(target);
}

IndexSubset max_independent_bruteforce(const SemiAlgRelation& r, const PointSet& pts,
                                       const SearchBudget& budget) {
    for (std::size_t target = pts.size(); target > 0; --target)
        if (auto s = brute_force_independent(r, pts, target, budget)) return *s;
    return {};
}

bool is_ks3_free(const SemiAlgRelation& r, const PointSet& pts, std::size_t s,
                 const SearchBudget& budget) {
    if (r.arity() != 3) throw ContractViolation("is_ks3_free: relation arity must be 3");
    return !brute_force_clique(r, pts, s, budget).has_value();
}

std::vector<std::vector<bool>> pair_membership_tables(const RelationSystem& sys) {
    const std::size_t n = sys.base.size();
    std::vector<std::vector<bool>> tables(sys.relations.size(), std::vector<bool>(n * n, false));
    for (std::size_t c = 0; c < sys.relations.size(); ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                bool in = pair_in_relation(sys.relations[c], sys.base[i], sys.base[j]);
                tables[c][i * n + j] = in;
                tables[c][j * n + i] = in;
            }
    return tables;
}

std::optional<MonoTriangle> find_mono_triangle_bruteforce(const RelationSystem& sys,
                                                          const SearchBudget& budget) {
    validate_relation_system(sys);
    for (const PairRelation& r : sys.relations)
        if (const auto* sr = std::get_if<SemiAlgRelation>(&r); sr && sr->arity() != 2)
            throw ContractViolation("find_mono_triangle: relations must be binary");
    const std::size_t n = sys.base.size();
    Int cube = Int(n) * n * n;
    if (cube > Int(budget.max_tuple_evals))
        throw BudgetExceeded("find_mono_triangle_bruteforce: |P|^3 exceeds budget");

    auto tables = pair_membership_tables(sys);

    // coverage first: every pair must lie in some relation
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool covered = false;
            for (const auto& t : tables)
                if (t[i * n + j]) {
                    covered = true;
                    break;
                }
            if (!covered)
                throw ContractViolation("find_mono_triangle: pair (" + std::to_string(i) +
                                        "," + std::to_string(j) + ") is in no relation");
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
                for (std::size_t c = 0; c < tables.size(); ++c)
                    if (tables[c][i * n + j] && tables[c][i * n + l] && tables[c][j * n + l])
                        return MonoTriangle{{i, j, l}, c};
    return std::nullopt;
}

}  // namespace semialg
