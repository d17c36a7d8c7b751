#include <set>

#include "doctest.h"
#include "semialg/errors.hpp"
#include "semialg/partition.hpp"
#include "semialg/rng.hpp"

using namespace semialg;

namespace {

Poly uni_linear(const Rat& root) {  // x - root
    Poly p(1);
    p.add_term({1}, Rat(1));
    p.add_term({0}, -root);
    return p;
}

Poly line2(const Rat& a, const Rat& b, const Rat& c) {
    Poly p(2);
    p.add_term({1, 0}, a);
    p.add_term({0, 1}, b);
    p.add_term({0, 0}, c);
    return p;
}

}  // namespace

TEST_CASE("partition: 400 spaced 1-D points, 16 surfaces, 8 parts") {
    PointSet pts;
    pts.dim = 1;
    for (long i = 0; i < 400; ++i) pts.points.push_back({Rat(i)});
    std::vector<Surface> sigma;
    for (long k = 0; k < 16; ++k)
        sigma.push_back({uni_linear(Rat(25 * k)), static_cast<std::size_t>(k), 0});

    PartitionParams params;
    params.ell = 8;
    params.backend = CuttingBackend::Exact1D;
    params.seed = 5;
    PartitionResult res = partition_low_crossing(pts, sigma, params);

    REQUIRE(res.parts.size() == 8);
    CHECK(res.floor_size == 12);
    for (const auto& part : res.parts) CHECK(part.points.size() >= 12);
    // first part takes floor(400/8) = 50 points per the schedule
    CHECK(res.schedule[0] == 50);

    PartitionCheck check = verify_partition(pts, sigma, res, params);
    CHECK(check.ok());
    CHECK(res.doubling_identity_ok);
}

TEST_CASE("partition: empty surface family, single trivial round") {
    PointSet pts;
    pts.dim = 1;
    for (long i = 0; i < 100; ++i) pts.points.push_back({Rat(i)});
    PartitionParams params;
    params.ell = 4;
    params.seed = 1;
    PartitionResult res = partition_low_crossing(pts, {}, params);
    REQUIRE(res.parts.size() == 4);
    for (const auto& part : res.parts) {
        CHECK(Int(static_cast<long>(part.points.size())) >= res.floor_size);
        CHECK(part.cell.contains(Point{Rat(50)}) == true);  // full-space cell
    }
    CHECK(res.profile.empty());
    CHECK(res.max_profile == 0);
}

TEST_CASE("partition: range guard") {
    PointSet pts;
    pts.dim = 1;
    for (long i = 0; i < 30; ++i) pts.points.push_back({Rat(i)});
    std::vector<Surface> sigma;
    for (long k = 0; k < 20; ++k)
        sigma.push_back({uni_linear(make_rat(2 * k + 1, 2)), static_cast<std::size_t>(k), 0});
    PartitionParams params;
    params.ell = 4;  // log2(20) > 4 violates the range
    CHECK_THROWS_AS(partition_low_crossing(pts, sigma, params), ContractViolation);
    params.enforce_range = false;
    PartitionResult res = partition_low_crossing(pts, sigma, params);
    CHECK(res.parts.size() == 4);
    CHECK(!res.notes.empty());
}

TEST_CASE("partition: planar points and random lines") {
    Rng rng(31337);
    std::uniform_int_distribution<long> co(-40, 40);
    PointSet pts;
    pts.dim = 2;
    std::set<Point> dedup;
    while (pts.points.size() < 300) {
        Point p{make_rat(co(rng), 4), make_rat(co(rng), 4)};
        if (dedup.insert(p).second) pts.points.push_back(p);
    }
    std::vector<Surface> sigma;
    for (std::size_t k = 0; k < 40; ++k) {
        long a = co(rng), b = co(rng), c = co(rng);
        if (a == 0 && b == 0) b = 1;
        sigma.push_back({line2(Rat(a), Rat(b), Rat(c)), k, 0});
    }
    PartitionParams params;
    params.ell = 8;
    params.backend = CuttingBackend::Linear2D;
    params.seed = 77;
    PartitionResult res = partition_low_crossing(pts, sigma, params);
    REQUIRE(res.parts.size() == 8);
    PartitionCheck check = verify_partition(pts, sigma, res, params);
    CHECK(check.ok());
    CHECK(res.doubling_identity_ok);
    // profile entries count part-cells crossed, so never exceed ell
    for (const auto& [sid, k] : res.profile) CHECK(k <= 8);
}
