#include "semialg/pointset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "semialg/errors.hpp"

namespace semialg {

void validate_point_set(const PointSet& ps) {
    if (ps.dim < 1) throw ContractViolation("point set: dimension must be >= 1");
    for (const Point& p : ps.points)
        if (p.size() != ps.dim)
            throw ContractViolation("point set: point dimension mismatch");
    std::set<Point> seen;
    for (std::size_t i = 0; i < ps.points.size(); ++i)
        if (!seen.insert(ps.points[i]).second)
            throw ContractViolation("point set: duplicate point at index " + std::to_string(i));
    if (!ps.labels.empty() && ps.labels.size() != ps.points.size())
        throw ContractViolation("point set: label count mismatch");
}

PointSet parse_point_set(std::istream& in) {
    PointSet ps;
    std::size_t n = 0;
    std::string line;
    bool header_done = false;
    std::size_t read = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (!header_done) {
            ps.dim = static_cast<unsigned>(std::stoul(tok));
            if (!(ls >> n)) throw ContractViolation("point set: bad header, expected 'd N'");
            header_done = true;
            continue;
        }
        Point p;
        p.push_back(parse_rat(tok));
        while (ls >> tok) p.push_back(parse_rat(tok));
        if (p.size() != ps.dim)
            throw ContractViolation("point set: line has " + std::to_string(p.size()) +
                                    " coordinates, expected " + std::to_string(ps.dim));
        ps.points.push_back(std::move(p));
        if (++read == n) break;
    }
    if (!header_done) throw ContractViolation("point set: missing header");
    if (ps.points.size() != n)
        throw ContractViolation("point set: expected " + std::to_string(n) + " points, got " +
                                std::to_string(ps.points.size()));
    validate_point_set(ps);
    return ps;
}

PointSet parse_point_set_text(const std::string& text) {
    std::istringstream in(text);
    return parse_point_set(in);
}

void write_point_set(std::ostream& out, const PointSet& ps) {
    out << ps.dim << " " << ps.points.size() << "\n";
    for (const Point& p : ps.points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << " ";
            out << rat_to_string(p[i]);
        }
        out << "\n";
    }
}

std::string point_set_to_string(const PointSet& ps) {
    std::ostringstream out;
    write_point_set(out, ps);
    return out.str();
}

PointSet load_point_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot open point-set file: " + path);
    return parse_point_set(in);
}

void save_point_set(const std::string& path, const PointSet& ps) {
    std::ofstream out(path);
    if (!out) throw ContractViolation("cannot write point-set file: " + path);
    write_point_set(out, ps);
}

PointSet point_set_1d(const std::vector<Rat>& xs) {
    PointSet ps;
    ps.dim = 1;
    for (const Rat& x : xs) ps.points.push_back({x});
    validate_point_set(ps);
    return ps;
}

}  // namespace semialg
