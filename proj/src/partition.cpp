#include "semialg/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "semialg/errors.hpp"
#include "semialg/rng.hpp"

namespace semialg {

namespace {

// Largest "nice" rational q with q^(2d) <= x, seeded from a double estimate.
Rat rat_root_floor(const Rat& x, unsigned two_d) {
    if (x <= 0) throw ContractViolation("rat_root_floor: positive argument required");
    double est = std::pow(x.get_d(), 1.0 / two_d);
    Rat q(est);
    q.canonicalize();
    if (q <= 0) q = make_rat(1, 1024);
    // shave until exact: q^(2d) <= x
    while (pow_rat(q, two_d) > x) q *= make_rat(1023, 1024);
    // tighten back up while staying below
    Rat step = make_rat(1, 1024);
    for (int i = 0; i < 12; ++i) {
        Rat cand = q * (Rat(1) + step);
        if (pow_rat(cand, two_d) <= x) q = cand;
        else step /= 2;
    }
    return q;
}

std::vector<std::size_t> points_in_cell(const PointSet& pts, const Cell& cell,
                                        const std::vector<bool>& used) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!used[i] && cell.contains(pts[i])) out.push_back(i);
    return out;
}

Cell full_space_cell(unsigned dim) {
    if (dim == 1) return Cell{0, Interval1D::all()};
    Trapezoid2D t;
    t.xr = RatInterval::all();
    return Cell{0, t};
}

}  // namespace

PartitionResult partition_low_crossing(const PointSet& pts, std::vector<Surface> sigma,
                                       const PartitionParams& params) {
    validate_point_set(pts);
    const std::size_t n = pts.size();
    const std::size_t ell = params.ell;
    const std::size_t m = sigma.size();
    if (ell < 1 || ell > n)
        throw ContractViolation("partition: need 1 <= ell <= N");

    PartitionResult res;
    if (params.enforce_range) {
        // paper range: log2 m < ell < N/10
        bool lo_ok = m < (Int(1) << ell);
        bool hi_ok = 10 * ell < n;
        if (!lo_ok || !hi_ok)
            throw ContractViolation(
                "partition: parameter range log2(m) < ell < N/10 violated (m=" +
                std::to_string(m) + ", ell=" + std::to_string(ell) +
                ", N=" + std::to_string(n) + ")");
    } else {
        if (!(m < (Int(1) << ell)) || !(10 * ell < n))
            res.notes.push_back("paper range log2(m) < ell < N/10 not satisfied; "
                                "running in relaxed mode");
    }

    const unsigned d = pts.dim;
    const unsigned two_d = 2 * d;
    res.floor_size = floor_rat(make_rat(Int(static_cast<long>(n)),
                                        Int(4 * static_cast<long>(ell))));
    Rat ratio = make_rat(Int(static_cast<long>(ell)), Int(1)) / params.c1;
    res.r_used = rat_root_floor(ratio, two_d);

    std::vector<bool> used(n, false);
    const Rat one_minus = Rat(1) - make_rat(1, static_cast<long>(ell));
    Rat decay(1);
    const Rat base_share = make_rat(static_cast<long>(n), static_cast<long>(ell));

    for (std::size_t round = 0; round < ell; ++round) {
        Int target = floor_rat(base_share * decay);
        decay *= one_minus;
        if (target < 1) target = 1;

        bool placed = false;
        std::string round_failure;
        for (unsigned attempt = 0; attempt <= params.round_retries && !placed; ++attempt) {
            Cutting cut;
            if (m == 0) {
                cut.dim = d;
                cut.cells.push_back(full_space_cell(d));
                cut.crossing.emplace_back();
            } else {
                CuttingParams cp;
                cp.r = res.r_used;
                cp.backend = params.backend;
                cp.seed = derive_seed(params.seed, round, attempt);
                cp.c1 = params.c1;
                cp.degree_cap = params.degree_cap;
                cp.max_cells = ell;
                cut = build_cutting(sigma, cp, &pts);
            }

            // heaviest cell by remaining points, ties to the lowest cell id
            std::size_t best = cut.cells.size();
            std::vector<std::size_t> best_points;
            for (std::size_t ci = 0; ci < cut.cells.size(); ++ci) {
                auto inside = points_in_cell(pts, cut.cells[ci], used);
                if (best == cut.cells.size() || inside.size() > best_points.size()) {
                    best = ci;
                    best_points = std::move(inside);
                }
            }
            if (best == cut.cells.size()) break;

            Int have(static_cast<long>(best_points.size()));
            Int take = std::min(target, have);
            if (take < std::max(Int(1), res.floor_size)) {
                std::ostringstream os;
                os << "round " << round << " attempt " << attempt << ": heaviest cell has "
                   << best_points.size() << " points, need at least "
                   << std::max(Int(1), res.floor_size).get_str();
                round_failure = os.str();
                continue;
            }

            if (take < target) {
                std::ostringstream os;
                os << "round " << round << ": heaviest cell held " << have.get_str()
                   << " points, below the schedule size " << target.get_str();
                res.notes.push_back(os.str());
            }
            // deterministic pick: lexicographically smallest coordinates first
            std::sort(best_points.begin(), best_points.end(),
                      [&](std::size_t a, std::size_t b) {
                          return pts[a] != pts[b] ? pts[a] < pts[b] : a < b;
                      });
            std::size_t take_n = static_cast<std::size_t>(take.get_ui());
            best_points.resize(take_n);
            std::sort(best_points.begin(), best_points.end());
            for (std::size_t i : best_points) used[i] = true;

            PartitionPart part;
            part.points = std::move(best_points);
            part.cell = cut.cells[best];
            part.cell.id = res.parts.size();
            part.round = round;
            res.parts.push_back(std::move(part));
            res.schedule.push_back(take);

            // double every surface crossing the chosen cell
            for (std::size_t sid : cut.crossing[best]) {
                for (Surface& s : sigma)
                    if (s.id == sid) {
                        ++s.weight_exp;
                        break;
                    }
                ++res.profile[sid];
            }
            placed = true;
        }
        if (!placed)
            throw RetriesExhausted("partition: " + (round_failure.empty()
                                                        ? "no cell available in round " +
                                                              std::to_string(round)
                                                        : round_failure));
    }

    for (const auto& [sid, count] : res.profile)
        res.max_profile = std::max(res.max_profile, static_cast<std::size_t>(count));

    // independent recount of the profile over the final part cells
    std::map<std::size_t, unsigned> recount;
    for (const Surface& s : sigma)
        for (const PartitionPart& part : res.parts)
            if (crosses(s, part.cell, params.degree_cap)) ++recount[s.id];
    if (recount != res.profile)
        throw ContractViolation("partition: crossing profile disagrees with recount");

    // minimal c2 with max_profile <= c2 * ell^{1 - 1/(2d)}; the ceiling check
    // is exact: max^{2d} <= c2^{2d} * ell^{2d-1}
    double ell_pow = std::pow(static_cast<double>(ell),
                              1.0 - 1.0 / static_cast<double>(two_d));
    res.measured_c2 = ell_pow > 0 ? static_cast<double>(res.max_profile) / ell_pow : 0.0;
    Int lhs = pow_int(Int(static_cast<long>(res.max_profile)), two_d);
    Rat rhs = pow_rat(params.c2, two_d) * Rat(pow_int(Int(static_cast<long>(ell)),
                                                      two_d - 1));
    res.c2_within_ceiling = Rat(lhs) <= rhs;

    // doubling identity: 2^kappa <= m * (1 + 1/r)^ell for every surface
    if (m > 0) {
        Rat growth = pow_rat(Rat(1) + Rat(1) / res.r_used, static_cast<unsigned>(ell));
        Rat bound = Rat(static_cast<long>(m)) * growth;
        for (const auto& [sid, kappa] : res.profile)
            if (Rat(pow_int(Int(2), kappa)) > bound) res.doubling_identity_ok = false;
    }

    res.final_weight_exp.reserve(sigma.size());
    for (const Surface& s : sigma) res.final_weight_exp.push_back(s.weight_exp);
    return res;
}

PartitionCheck verify_partition(const PointSet& pts, std::span<const Surface> sigma,
                                const PartitionResult& result,
                                const PartitionParams& params) {
    PartitionCheck check;
    std::set<std::size_t> seen;
    for (std::size_t pi = 0; pi < result.parts.size(); ++pi) {
        const PartitionPart& part = result.parts[pi];
        if (Int(static_cast<long>(part.points.size())) <
            std::max(Int(1), result.floor_size)) {
            check.sizes_ok = false;
            check.issues.push_back("part " + std::to_string(pi) + " smaller than floor");
        }
        for (std::size_t idx : part.points) {
            if (!seen.insert(idx).second) {
                check.disjoint_ok = false;
                check.issues.push_back("point " + std::to_string(idx) + " in two parts");
            }
            if (!part.cell.contains(pts[idx])) {
                check.containment_ok = false;
                check.issues.push_back("point " + std::to_string(idx) +
                                       " outside the cell of part " + std::to_string(pi));
            }
        }
    }
    std::map<std::size_t, unsigned> recount;
    for (const Surface& s : sigma)
        for (const PartitionPart& part : result.parts)
            if (crosses(s, part.cell, params.degree_cap)) ++recount[s.id];
    for (const auto& [sid, cnt] : recount)
        check.recounted_max = std::max(check.recounted_max, static_cast<std::size_t>(cnt));
    if (recount != result.profile) {
        check.profile_ok = false;
        check.issues.push_back("stored crossing profile does not match the recount");
    }
    return check;
}

}  // namespace semialg
