#include "semialg/schur.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "semialg/errors.hpp"

namespace semialg {

bool is_sum_free(const std::vector<long>& values) {
    std::set<long> in(values.begin(), values.end());
    for (long x : values)
        for (long y : values) {
            if (y < x) continue;  // unordered pairs with repetition
            if (in.count(x + y)) return false;
        }
    return true;
}

void validate_sum_free_partition(const SumFreePartition& p) {
    if (p.n_max < 1) throw ContractViolation("partition: n_max must be >= 1");
    std::vector<int> owner(p.n_max + 1, -1);
    for (std::size_t c = 0; c < p.classes.size(); ++c)
        for (long v : p.classes[c]) {
            if (v < 1 || v > p.n_max)
                throw ContractViolation("partition: value " + std::to_string(v) +
                                        " outside 1.." + std::to_string(p.n_max));
            if (owner[v] != -1)
                throw ContractViolation("partition: value " + std::to_string(v) +
                                        " appears twice");
            owner[v] = static_cast<int>(c);
        }
    for (long v = 1; v <= p.n_max; ++v)
        if (owner[v] == -1)
            throw ContractViolation("partition: value " + std::to_string(v) + " unassigned");
    for (std::size_t c = 0; c < p.classes.size(); ++c)
        if (!is_sum_free(p.classes[c]))
            throw ContractViolation("partition: class " + std::to_string(c) +
                                    " is not sum-free");
}

unsigned interval_complexity(const std::vector<long>& values) {
    std::vector<long> v = values;
    std::sort(v.begin(), v.end());
    unsigned runs = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i == 0 || v[i] != v[i - 1] + 1) ++runs;
    return runs;
}

namespace {

struct SchurSearcher {
    unsigned m;
    long n;
    SchurOptions opts;
    std::uint64_t nodes = 0;
    bool budget_hit = false;

    std::vector<std::vector<char>> member;  // member[c][v] for v in 0..n
    std::vector<std::vector<long>> stack;   // class contents, ascending
    std::vector<unsigned> runs;             // interval count per class

    explicit SchurSearcher(unsigned m_, long n_, const SchurOptions& o)
        : m(m_), n(n_), opts(o), member(m_, std::vector<char>(n_ + 1, 0)),
          stack(m_), runs(m_, 0) {}

    bool can_place(long v, unsigned c) const {
        // v = x + y with x, y already in c; or x + v in c; or v + v in c
        for (long x : stack[c]) {
            if (x < v && member[c][v - x]) return false;
            if (x + v <= n && member[c][x + v]) return false;
        }
        if (2 * v <= n && member[c][2 * v]) return false;
        if (opts.interval_cap) {
            unsigned r = runs[c];
            if (stack[c].empty() || stack[c].back() != v - 1) ++r;
            if (r > *opts.interval_cap) return false;
        }
        return true;
    }

    bool solve(long v) {
        if (v > n) return true;
        if (++nodes > opts.node_budget) {
            budget_hit = true;
            return false;
        }
        bool used_fresh_class = false;
        for (unsigned c = 0; c < m; ++c) {
            if (stack[c].empty()) {
                if (used_fresh_class) break;  // symmetry: one fresh class per level
                used_fresh_class = true;
            }
            if (!can_place(v, c)) continue;
            bool fresh_run = stack[c].empty() || stack[c].back() != v - 1;
            stack[c].push_back(v);
            member[c][v] = 1;
            if (fresh_run) ++runs[c];
            if (solve(v + 1)) return true;
            if (budget_hit) return false;
            member[c][v] = 0;
            stack[c].pop_back();
            if (fresh_run) --runs[c];
        }
        return false;
    }
};

double interval_bound_value(unsigned m, const std::optional<unsigned>& cap) {
    if (!cap) return 0.0;
    double inner = std::log2(std::max(2.0, 2.0 * *cap));
    return std::pow(2.0, m * std::log2(inner));
}

}  // namespace

SchurDecision schur_decide(unsigned m, long n, const SchurOptions& opts) {
    if (m < 1) throw ContractViolation("schur_decide: m >= 1 required");
    if (n < 1) throw ContractViolation("schur_decide: n >= 1 required");
    SchurSearcher s(m, n, opts);
    bool sat = s.solve(1);
    SchurDecision out;
    out.nodes = s.nodes;
    out.interval_bound = interval_bound_value(m, opts.interval_cap);
    if (s.budget_hit) {
        out.status = SchurStatus::Unknown;
        return out;
    }
    if (!sat) {
        out.status = SchurStatus::Unsat;
        return out;
    }
    out.status = SchurStatus::Sat;
    SumFreePartition p;
    p.n_max = n;
    p.classes.resize(m);
    for (unsigned c = 0; c < m; ++c) p.classes[c] = s.stack[c];
    validate_sum_free_partition(p);
    out.partition = std::move(p);
    return out;
}

SchurMaximum schur_maximize(unsigned m, const SchurOptions& opts) {
    SchurMaximum out;
    SumFreePartition best;
    for (long n = 1;; ++n) {
        SchurDecision d = schur_decide(m, n, opts);
        out.nodes += d.nodes;
        out.interval_bound = d.interval_bound;
        if (d.status == SchurStatus::Unknown) {
            out.status = SchurStatus::Unknown;
            out.value = n - 1;
            if (n > 1) out.partition = std::move(best);
            return out;
        }
        if (d.status == SchurStatus::Unsat) {
            out.status = SchurStatus::Sat;
            out.value = n - 1;
            if (n > 1) out.partition = std::move(best);
            return out;
        }
        best = std::move(*d.partition);
    }
}

RelationSystem schur_coloring(const SumFreePartition& p) {
    validate_sum_free_partition(p);
    RelationSystem sys;
    sys.base.dim = 1;
    for (long v = 1; v <= p.n_max + 1; ++v) sys.base.points.push_back({Rat(v)});
    for (const auto& cls : p.classes) {
        std::vector<Int> targets;
        for (long v : cls) targets.emplace_back(v);
        sys.relations.emplace_back(IntervalDistanceRelation(
            Rat(1), Rat(p.n_max), Rat(1), make_rat(1, 2), std::move(targets)));
    }
    return sys;
}

SumFreePartition parse_partition(std::istream& in) {
    std::string line;
    SumFreePartition p;
    std::size_t m = 0;
    bool header = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (!header) {
            m = std::stoul(tok);
            if (!(ls >> p.n_max))
                throw ContractViolation("partition file: bad header, expected 'm N'");
            header = true;
            continue;
        }
        std::vector<long> cls;
        cls.push_back(std::stol(tok));
        long v;
        while (ls >> v) cls.push_back(v);
        p.classes.push_back(std::move(cls));
        if (p.classes.size() == m) break;
    }
    if (!header) throw ContractViolation("partition file: missing header");
    if (p.classes.size() != m)
        throw ContractViolation("partition file: expected " + std::to_string(m) +
                                " classes, got " + std::to_string(p.classes.size()));
    validate_sum_free_partition(p);
    return p;
}

SumFreePartition parse_partition_text(const std::string& text) {
    std::istringstream in(text);
    return parse_partition(in);
}

void write_partition(std::ostream& out, const SumFreePartition& p) {
    out << p.classes.size() << " " << p.n_max << "\n";
    for (const auto& cls : p.classes) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (i) out << " ";
            out << cls[i];
        }
        out << "\n";
    }
}

std::string partition_to_string(const SumFreePartition& p) {
    std::ostringstream os;
    write_partition(os, p);
    return os.str();
}

SumFreePartition load_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot open partition file: " + path);
    return parse_partition(in);
}

void save_partition(const std::string& path, const SumFreePartition& p) {
    std::ofstream out(path);
    if (!out) throw ContractViolation("cannot write partition file: " + path);
    write_partition(out, p);
}

}  // namespace semialg
