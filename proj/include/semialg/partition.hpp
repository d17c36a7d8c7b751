#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "semialg/cutting.hpp"

namespace semialg {

struct PartitionParams {
    std::size_t ell = 8;      // number of parts
    CuttingBackend backend = CuttingBackend::Exact1D;
    std::uint64_t seed = 0;
    Rat c1 = Rat(8);          // cutting constant: per-round r = (ell/c1)^{1/(2d)}
    Rat c2 = Rat(4);          // ceiling for max-crossings <= c2 * ell^{1-1/(2d)}
    bool enforce_range = true;  // log2 m < ell < N/10
    unsigned round_retries = 4;
    unsigned degree_cap = 8;
};

struct PartitionPart {
    std::vector<std::size_t> points;  // indices into the input point set
    Cell cell;                        // the cell containing the part, id = part index
    std::size_t round = 0;
};

struct PartitionResult {
    std::vector<PartitionPart> parts;
    std::map<std::size_t, unsigned> profile;  // surface id -> part-cells crossed
    std::size_t max_profile = 0;
    Rat r_used = Rat(1);
    double measured_c2 = 0.0;   // max_profile / ell^{1-1/(2d)}
    bool c2_within_ceiling = true;
    bool doubling_identity_ok = true;
    Int floor_size = 0;         // floor(N / (4*ell))
    std::vector<Int> schedule;  // the take size per round
    std::vector<std::string> notes;
    std::vector<unsigned> final_weight_exp;  // parallel to the input surfaces
};

// Splits P into ell disjoint parts, each inside one cell of a per-round
// weighted cutting with parameter r = (ell/c1)^{1/(2d)}; surfaces crossing a
// chosen cell are doubled (weight_exp + 1) before the next round. Part sizes
// follow floor((N/ell)(1-1/ell)^{j-1}) and never drop below floor(N/(4*ell)).
PartitionResult partition_low_crossing(const PointSet& pts, std::vector<Surface> sigma,
                                       const PartitionParams& params);

struct PartitionCheck {
    bool sizes_ok = true;
    bool disjoint_ok = true;
    bool containment_ok = true;
    bool profile_ok = true;   // stored profile equals an independent recount
    bool ok() const { return sizes_ok && disjoint_ok && containment_ok && profile_ok; }
    std::size_t recounted_max = 0;
    std::vector<std::string> issues;
};

// Independent recount of every postcondition from the original (unweighted)
// surface list.
PartitionCheck verify_partition(const PointSet& pts, std::span<const Surface> sigma,
                                const PartitionResult& result, const PartitionParams& params);

}  // namespace semialg
