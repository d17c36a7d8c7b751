#include "semialg/relation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "semialg/errors.hpp"
#include "semialg/rng.hpp"

namespace semialg {

SemiAlgRelation::SemiAlgRelation(unsigned arity, unsigned dim, std::vector<Poly> polys,
                                 std::vector<bool> truth_table, unsigned complexity)
    : arity_(arity),
      dim_(dim),
      complexity_(complexity),
      polys_(std::move(polys)),
      truth_table_(std::move(truth_table)) {
    if (arity_ < 2) throw ContractViolation("relation: arity must be >= 2");
    if (dim_ < 1) throw ContractViolation("relation: dimension must be >= 1");
    if (polys_.size() > complexity_)
        throw ContractViolation("relation: more polynomials than the complexity bound");
    if (polys_.size() >= 64)
        throw ContractViolation("relation: too many conditions for a bit table");
    for (const Poly& p : polys_) {
        if (p.num_vars() != arity_ * dim_)
            throw ContractViolation("relation: polynomial must have k*d variables");
        if (p.total_degree() > complexity_)
            throw ContractViolation("relation: polynomial degree exceeds the complexity bound");
    }
    if (truth_table_.size() != (std::size_t{1} << polys_.size()))
        throw ContractViolation("relation: truth table must have 2^{#polys} entries");
}

bool SemiAlgRelation::contains(std::span<const Point> pts) const {
    if (pts.size() != arity_)
        throw ContractViolation("tuple_in_relation: tuple size != arity");
    std::vector<Rat> coords;
    coords.reserve(arity_ * dim_);
    for (const Point& p : pts) {
        if (p.size() != dim_)
            throw ContractViolation("tuple_in_relation: point dimension mismatch");
        coords.insert(coords.end(), p.begin(), p.end());
    }
    std::size_t idx = 0;
    for (std::size_t j = 0; j < polys_.size(); ++j)
        if (sign_of(polys_[j].eval(coords)) >= 0) idx |= std::size_t{1} << j;
    return truth_table_[idx];
}

bool SemiAlgRelation::contains_pair(const Point& a, const Point& b) const {
    if (arity_ != 2) throw ContractViolation("contains_pair: relation is not binary");
    std::array<Point, 2> pts{a, b};
    return contains(pts);
}

bool tuple_in_relation(const SemiAlgRelation& r, std::span<const Point> pts) {
    return r.contains(pts);
}

IntervalDistanceRelation::IntervalDistanceRelation(Rat window_lo, Rat window_hi, Rat scale,
                                                   Rat slack, std::vector<Int> targets)
    : window_lo_(std::move(window_lo)),
      window_hi_(std::move(window_hi)),
      scale_(std::move(scale)),
      slack_(std::move(slack)),
      targets_(std::move(targets)) {
    if (scale_ <= 0) throw ContractViolation("interval relation: scale must be positive");
    if (slack_ <= 0) throw ContractViolation("interval relation: slack must be positive");
    if (window_lo_ > window_hi_)
        throw ContractViolation("interval relation: empty distance window");
    std::sort(targets_.begin(), targets_.end());
}

unsigned IntervalDistanceRelation::complexity() const {
    return std::max<unsigned>(2, static_cast<unsigned>(2 + 2 * targets_.size()));
}

bool IntervalDistanceRelation::contains_pair(const Point& a, const Point& b) const {
    if (a.size() != 1 || b.size() != 1)
        throw ContractViolation("interval relation: points must be 1-D");
    Rat d = abs_rat(a[0] - b[0]);
    if (d < window_lo_ || d > window_hi_) return false;
    Rat q = d / scale_;
    for (const Int& z : targets_)
        if (abs_rat(q - Rat(z)) < slack_) return true;
    return false;
}

std::vector<Poly> IntervalDistanceRelation::surfaces_for(const Point& p) const {
    if (p.size() != 1) throw ContractViolation("interval relation: point must be 1-D");
    // (x-p)^2 - theta^2 for each boundary distance theta
    std::vector<Rat> thetas{window_lo_, window_hi_};
    for (const Int& z : targets_) {
        thetas.push_back(scale_ * (Rat(z) - slack_));
        thetas.push_back(scale_ * (Rat(z) + slack_));
    }
    Poly x = Poly::variable(1, 0);
    Poly shifted = x - Poly::constant(1, p[0]);
    Poly sq = shifted * shifted;
    std::vector<Poly> out;
    out.reserve(thetas.size());
    for (const Rat& th : thetas) out.push_back(sq - Poly::constant(1, th * th));
    return out;
}

SemiAlgRelation IntervalDistanceRelation::to_semialg(unsigned max_table_bits) const {
    // conditions, in order:
    //   c0: (x-y)^2 - lo^2 >= 0
    //   c1: hi^2 - (x-y)^2 >= 0
    //   per target z: a_z = (x-y)^2 - (scale*(z-slack))^2 > 0   (strict)
    //                 b_z = (scale*(z+slack))^2 - (x-y)^2 > 0   (strict)
    // strict conditions are stored negated: bit = (-a_z >= 0) etc., and the
    // table asks for bit == 0.
    std::size_t nconds = 2 + 2 * targets_.size();
    if (nconds > max_table_bits)
        throw BudgetExceeded("interval relation: truth table with 2^" +
                             std::to_string(nconds) + " entries refused");
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly diff = x - y;
    Poly sq = diff * diff;
    std::vector<Poly> polys;
    polys.push_back(sq - Poly::constant(2, window_lo_ * window_lo_));
    polys.push_back(Poly::constant(2, window_hi_ * window_hi_) - sq);
    for (const Int& z : targets_) {
        Rat lo = scale_ * (Rat(z) - slack_);
        Rat hi = scale_ * (Rat(z) + slack_);
        polys.push_back(-(sq - Poly::constant(2, lo * lo)));  // -a_z
        polys.push_back(-(Poly::constant(2, hi * hi) - sq));  // -b_z
    }
    std::vector<bool> table(std::size_t{1} << nconds, false);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        bool in_window = (idx & 1) && (idx & 2);
        if (!in_window) continue;
        bool near_target = false;
        for (std::size_t t = 0; t < targets_.size() && !near_target; ++t) {
            bool neg_a = idx & (std::size_t{1} << (2 + 2 * t));
            bool neg_b = idx & (std::size_t{1} << (3 + 2 * t));
            near_target = !neg_a && !neg_b;
        }
        table[idx] = near_target;
    }
    unsigned t = std::max<unsigned>(static_cast<unsigned>(nconds), 2);
    return SemiAlgRelation(2, 1, std::move(polys), std::move(table), t);
}

bool pair_in_relation(const PairRelation& r, const Point& a, const Point& b) {
    return std::visit([&](const auto& rel) { return rel.contains_pair(a, b); }, r);
}

unsigned relation_complexity(const PairRelation& r) {
    return std::visit([](const auto& rel) { return rel.complexity(); }, r);
}

unsigned relation_dim(const PairRelation& r) {
    return std::visit([](const auto& rel) { return rel.dim(); }, r);
}

std::vector<Poly> point_surfaces(const PairRelation& r, const Point& p) {
    if (const auto* idr = std::get_if<IntervalDistanceRelation>(&r))
        return idr->surfaces_for(p);
    const auto& rel = std::get<SemiAlgRelation>(r);
    if (rel.arity() != 2) throw ContractViolation("point_surfaces: relation is not binary");
    std::vector<Poly> out;
    out.reserve(rel.polys().size());
    for (const Poly& f : rel.polys()) out.push_back(substitute_block(f, p));
    return out;
}

void validate_relation_system(const RelationSystem& s) {
    validate_point_set(s.base);
    for (const PairRelation& r : s.relations)
        if (relation_dim(r) != s.base.dim)
            throw ContractViolation("relation system: relation dimension mismatch");
}

SymmetryReport check_symmetric(const SemiAlgRelation& r, const PointSet& sample,
                               unsigned trials, std::uint64_t seed) {
    if (sample.size() < r.arity())
        throw ContractViolation("check_symmetric: sample smaller than arity");
    Rng rng(seed);
    std::vector<std::size_t> idx(sample.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;

    for (unsigned t = 0; t < trials; ++t) {
        // random k-subset
        std::vector<std::size_t> chosen(idx);
        for (unsigned j = 0; j < r.arity(); ++j) {
            std::uniform_int_distribution<std::size_t> pick(j, chosen.size() - 1);
            std::swap(chosen[j], chosen[pick(rng)]);
        }
        chosen.resize(r.arity());
        std::sort(chosen.begin(), chosen.end());

        std::vector<Point> base_order;
        for (std::size_t i : chosen) base_order.push_back(sample[i]);
        bool reference = r.contains(base_order);

        std::vector<std::size_t> perm(r.arity());
        for (unsigned j = 0; j < r.arity(); ++j) perm[j] = j;
        while (std::next_permutation(perm.begin(), perm.end())) {
            std::vector<Point> reordered;
            for (std::size_t j : perm) reordered.push_back(base_order[j]);
            if (r.contains(reordered) != reference) {
                SymmetryReport rep;
                rep.symmetric = false;
                std::ostringstream os;
                os << "subset {";
                for (std::size_t i : chosen) os << " " << i;
                os << " } ordering (";
                for (std::size_t j : perm) os << " " << j;
                os << " ) disagrees with the sorted ordering";
                rep.counterexample = os.str();
                return rep;
            }
        }
    }
    return SymmetryReport{};
}

SemiAlgRelation parse_relation(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        if (trimmed.empty() || trimmed[0] == '#') continue;
        lines.push_back(trimmed);
    }
    if (lines.size() < 2) throw ContractViolation("relation file: too short");

    std::istringstream header(lines.front());
    unsigned k, d, t;
    if (!(header >> k >> d >> t))
        throw ContractViolation("relation file: bad header, expected 'k d t'");

    const std::string& table_str = lines.back();
    for (char c : table_str)
        if (c != '0' && c != '1')
            throw ContractViolation("relation file: truth table must be a 0/1 string");

    std::vector<Poly> polys;
    for (std::size_t i = 1; i + 1 < lines.size(); ++i)
        polys.push_back(parse_poly(lines[i], k * d));
    if (table_str.size() != (std::size_t{1} << polys.size()))
        throw ContractViolation("relation file: table length != 2^{#polys}");
    std::vector<bool> table(table_str.size());
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = table_str[i] == '1';
    return SemiAlgRelation(k, d, std::move(polys), std::move(table), t);
}

SemiAlgRelation parse_relation_text(const std::string& text) {
    std::istringstream in(text);
    return parse_relation(in);
}

void write_relation(std::ostream& out, const SemiAlgRelation& r) {
    out << r.arity() << " " << r.dim() << " " << r.complexity() << "\n";
    for (const Poly& p : r.polys()) out << poly_to_string(p) << "\n";
    for (bool b : r.truth_table()) out << (b ? '1' : '0');
    out << "\n";
}

std::string relation_to_string(const SemiAlgRelation& r) {
    std::ostringstream out;
    write_relation(out, r);
    return out.str();
}

SemiAlgRelation load_relation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot open relation file: " + path);
    return parse_relation(in);
}

void save_relation(const std::string& path, const SemiAlgRelation& r) {
    std::ofstream out(path);
    if (!out) throw ContractViolation("cannot write relation file: " + path);
    write_relation(out, r);
}

}  // namespace semialg
