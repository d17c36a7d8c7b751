#include "semialg/cutting.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "semialg/errors.hpp"
#include "semialg/rng.hpp"

namespace semialg {

Int surface_weight(const Surface& s) {
    Int w;
    mpz_ui_pow_ui(w.get_mpz_t(), 2, s.weight_exp);
    return w;
}

Int total_surface_weight(std::span<const Surface> sigma) {
    unsigned max_exp = 0;
    for (const Surface& s : sigma) max_exp = std::max(max_exp, s.weight_exp);
    if (max_exp <= 50) {
        // fast path: everything fits comfortably in a 64-bit accumulator
        // as long as the count stays small
        std::uint64_t acc = 0;
        bool ok = true;
        for (const Surface& s : sigma) {
            std::uint64_t w = std::uint64_t{1} << s.weight_exp;
            if (acc > ~std::uint64_t{0} - w) { ok = false; break; }
            acc += w;
        }
        if (ok) return Int(static_cast<unsigned long>(acc));
    }
    Int acc(0);
    for (const Surface& s : sigma) acc += surface_weight(s);
    return acc;
}

// ---- cells ------------------------------------------------------------

namespace {

bool trapezoid_contains(const Trapezoid2D& t, const Rat& x, const Rat& y) {
    if (!t.xr.contains(x)) return false;
    if (t.lower && y < t.lower->at(x)) return false;
    if (t.upper && y >= t.upper->at(x)) return false;
    return true;
}

bool box_contains(const Box2D& b, const Rat& x, const Rat& y) {
    bool inside = x >= b.x_lo && x < b.x_hi && y >= b.y_lo && y < b.y_hi;
    return b.complement ? !inside : inside;
}

std::string rat_or_inf(const std::optional<Rat>& v, const char* inf) {
    return v ? rat_to_string(*v) : std::string(inf);
}

}  // namespace

bool Cell::contains(const Point& p) const {
    if (p.size() != dim())
        throw ContractViolation("Cell::contains: point dimension mismatch");
    if (const auto* iv = std::get_if<Interval1D>(&geom)) return iv->contains(p[0]);
    if (const auto* t = std::get_if<Trapezoid2D>(&geom))
        return trapezoid_contains(*t, p[0], p[1]);
    return box_contains(std::get<Box2D>(geom), p[0], p[1]);
}

std::string Cell::describe() const {
    std::ostringstream os;
    os << "cell " << id << " ";
    if (const auto* iv = std::get_if<Interval1D>(&geom)) {
        os << (iv->lo_closed ? "[" : "(") << rat_or_inf(iv->lo, "-inf") << ", "
           << rat_or_inf(iv->hi, "+inf") << (iv->hi_closed ? "]" : ")");
    } else if (const auto* t = std::get_if<Trapezoid2D>(&geom)) {
        os << "trapezoid x in " << (t->xr.lo_closed ? "[" : "(")
           << rat_or_inf(t->xr.lo, "-inf") << ", " << rat_or_inf(t->xr.hi, "+inf") << ")";
        if (t->lower)
            os << " above y=" << rat_to_string(t->lower->slope) << "x+"
               << rat_to_string(t->lower->offset);
        if (t->upper)
            os << " below y=" << rat_to_string(t->upper->slope) << "x+"
               << rat_to_string(t->upper->offset);
    } else {
        const auto& b = std::get<Box2D>(geom);
        if (b.complement) os << "complement of root box";
        else
            os << "box [" << rat_to_string(b.x_lo) << "," << rat_to_string(b.x_hi) << ")x["
               << rat_to_string(b.y_lo) << "," << rat_to_string(b.y_hi) << ")";
    }
    return os.str();
}

// ---- SurfaceRoots -------------------------------------------------------

SurfaceRoots::SurfaceRoots(const Poly& f, unsigned degree_cap) {
    if (f.num_vars() != 1)
        throw ContractViolation("SurfaceRoots: polynomial must be univariate");
    if (f.is_zero()) {
        zero_ = true;
        return;
    }
    RootIsolationOptions opts;
    opts.degree_cap = degree_cap;
    RootIntervals ri = isolate_real_roots(f, opts);
    roots_ = ri.intervals;
    UniPoly p = UniPoly::from_poly(f).primitive();
    UniPoly g = gcd(p, p.derivative());
    if (g.degree() >= 1) {
        UniPoly q, r;
        UniPoly::divmod(p, g, q, r);
        p = q.primitive();
    }
    squarefree_ = std::move(p);
    if (squarefree_.degree() >= 1) chain_ = sturm_chain(squarefree_);
}

int SurfaceRoots::root_vs(std::size_t idx, const Rat& x) const {
    if (zero_ || idx >= roots_.size())
        throw ContractViolation("SurfaceRoots::root_vs: bad index");
    RootInterval& iv = roots_[idx];
    for (;;) {
        if (iv.exact) return iv.lo < x ? -1 : (iv.lo > x ? 1 : 0);
        if (x <= iv.lo) return 1;   // root lies strictly above lo
        if (x >= iv.hi) return -1;  // and strictly below hi
        if (squarefree_.eval(x) == 0) {
            iv = {x, x, true};
            return 0;
        }
        if (chain_->count_roots(iv.lo, x) == 1)
            iv.hi = x;  // root in (lo, x)
        else
            iv.lo = x;  // root in (x, hi)
    }
}

bool SurfaceRoots::any_root_in(const RatInterval& cell) const {
    if (zero_) return false;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        bool above_lo = true, below_hi = true;
        if (cell.lo) {
            int c = root_vs(i, *cell.lo);
            above_lo = c > 0 || (c == 0 && cell.lo_closed);
        }
        if (above_lo && cell.hi) {
            int c = root_vs(i, *cell.hi);
            below_hi = c < 0 || (c == 0 && cell.hi_closed);
        }
        if (above_lo && below_hi) return true;
    }
    return false;
}

// ---- crossing tests ------------------------------------------------------

namespace {

struct LinearForm {
    Rat a, b, c;  // a*x + b*y + c
};

LinearForm linear_form_of(const Poly& p) {
    if (p.num_vars() != 2)
        throw ContractViolation("crossing test: surface polynomial must be bivariate");
    if (p.total_degree() > 1)
        throw BackendUnsupported("crossing test: nonlinear surface on a trapezoid cell "
                                 "(use the subdivision backend)");
    LinearForm f{Rat(0), Rat(0), Rat(0)};
    for (const auto& [e, k] : p.terms()) {
        if (e[0] == 1) f.a = k;
        else if (e[1] == 1) f.b = k;
        else f.c = k;
    }
    return f;
}

bool crosses_interval(const Poly& f, const Interval1D& iv, unsigned degree_cap) {
    if (f.is_zero()) return false;  // fully contains every cell
    if (iv.is_empty()) return false;
    if (iv.is_point()) return false;  // contained or disjoint, never crossed
    SurfaceRoots roots(f, degree_cap);
    return roots.any_root_in(iv);
}

bool crosses_trapezoid(const Poly& p, const Trapezoid2D& t) {
    if (p.is_zero()) return false;
    LinearForm f = linear_form_of(p);
    if (f.a == 0 && f.b == 0) return false;  // nonzero constant, empty zero set
    if (f.b == 0) {
        // vertical line x = x0
        Rat x0 = -f.c / f.a;
        if (!t.xr.contains(x0)) return false;
        if (t.lower && t.upper) return t.lower->at(x0) < t.upper->at(x0);
        return true;
    }
    // y(x) = -(a x + c)/b must satisfy lower(x) <= y(x) < upper(x) for some x
    RatInterval xs = t.xr;
    Rat ya = -f.a / f.b, yc = -f.c / f.b;
    if (t.lower)
        xs = intersect(xs, linear_halfline(ya - t.lower->slope, yc - t.lower->offset,
                                           /*strict=*/false));
    if (t.upper)
        xs = intersect(xs, linear_halfline(t.upper->slope - ya, t.upper->offset - yc,
                                           /*strict=*/true));
    return !xs.is_empty();
}

RatRange poly_range_on_box(const Poly& p, const RatRange& xs, const RatRange& ys) {
    RatRange acc{Rat(0), Rat(0)};
    for (const auto& [e, k] : p.terms()) {
        RatRange term{Rat(1), Rat(1)};
        if (e[0]) term = term * range_pow(xs, e[0]);
        if (e[1]) term = term * range_pow(ys, e[1]);
        acc = acc + range_scale(k, term);
    }
    return acc;
}

// Conservative: true whenever the zero set might meet the box; exact "no"
// answers come from a sign certificate over the closed box.
bool crosses_box(const Poly& p, const Box2D& b) {
    if (p.is_zero()) return false;
    if (p.is_constant()) return false;
    if (b.complement) return true;  // no certificate outside the root box
    std::array<std::array<Rat, 2>, 4> corners{{{b.x_lo, b.y_lo},
                                               {b.x_lo, b.y_hi},
                                               {b.x_hi, b.y_lo},
                                               {b.x_hi, b.y_hi}}};
    int pos = 0, neg = 0, zero = 0;
    for (const auto& c : corners) {
        int s = sign_of(p.eval(std::vector<Rat>{c[0], c[1]}));
        if (s > 0) ++pos;
        else if (s < 0) ++neg;
        else ++zero;
    }
    if (zero > 0 || (pos > 0 && neg > 0)) return true;  // certain hit on the closure
    RatRange r = poly_range_on_box(p, {b.x_lo, b.x_hi}, {b.y_lo, b.y_hi});
    return r.contains_zero();
}

}  // namespace

bool crosses(const Surface& z, const Cell& c, unsigned degree_cap) {
    if (const auto* iv = std::get_if<Interval1D>(&c.geom))
        return crosses_interval(z.poly, *iv, degree_cap);
    if (const auto* t = std::get_if<Trapezoid2D>(&c.geom)) return crosses_trapezoid(z.poly, *t);
    return crosses_box(z.poly, std::get<Box2D>(c.geom));
}

const char* backend_name(CuttingBackend b) {
    switch (b) {
        case CuttingBackend::Exact1D: return "1d";
        case CuttingBackend::Linear2D: return "2d-linear";
        case CuttingBackend::Subdivision2D: return "2d-subdivision";
    }
    return "?";
}

CuttingBackend parse_backend(const std::string& name) {
    if (name == "1d") return CuttingBackend::Exact1D;
    if (name == "2d-linear") return CuttingBackend::Linear2D;
    if (name == "2d-subdivision") return CuttingBackend::Subdivision2D;
    throw ContractViolation("unknown cutting backend: " + name);
}

// ---- shared helpers ------------------------------------------------------

namespace {

// crossing weight cw satisfies cw <= W / r  <=>  cw * r_num <= W * r_den
bool within_cap(const Int& crossing_weight, const Int& total, const Rat& r) {
    return crossing_weight * r.get_num() <= total * r.get_den();
}

Int uniform_int_below(const Int& n, Rng& rng) {
    if (n <= 1) return Int(0);
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (;;) {
        Int v(0);
        for (std::size_t got = 0; got < bits; got += 64) {
            v <<= 64;
            std::uint64_t w = rng();
            Int chunk;
            mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
            v |= chunk;
        }
        std::size_t excess = ((bits + 63) / 64) * 64 - bits;
        v >>= excess;
        if (v < n) return v;
    }
}

struct AdmittedSurfaces {
    std::vector<const Surface*> list;  // non-degenerate members of sigma
    std::vector<std::string> warnings;
    Int total_weight = 0;
};

AdmittedSurfaces admit_surfaces(std::span<const Surface> sigma, unsigned dim) {
    AdmittedSurfaces out;
    for (const Surface& s : sigma) {
        if (s.poly.num_vars() != dim)
            throw ContractViolation("build_cutting: surface dimension mismatch");
        if (s.poly.is_zero()) {
            out.warnings.push_back("surface " + std::to_string(s.id) +
                                   " is identically zero; it fully contains every cell "
                                   "and was excluded");
            continue;
        }
        out.list.push_back(&s);
    }
    std::vector<Surface> tmp;
    tmp.reserve(out.list.size());
    for (const Surface* s : out.list) tmp.push_back(*s);
    out.total_weight = total_surface_weight(tmp);
    return out;
}

// ---- exact 1-D backend ---------------------------------------------------

struct RootRec {
    RootInterval iv;
    const UniPoly* sf = nullptr;       // squarefree witness for refinement
    const SturmChain* chain = nullptr;
    std::vector<std::size_t> ids;      // surface ids sharing this root
};

struct OwnedChain {
    UniPoly sf;
    SturmChain chain;
};

Rat rec_safe_mid(const RootRec& r) {
    Rat mid = (r.iv.lo + r.iv.hi) / 2;
    while (r.sf->eval(mid) == 0) mid = (r.iv.lo + mid) / 2;
    return mid;
}

void rec_refine(RootRec& r) {
    if (r.iv.exact) return;
    Rat mid = rec_safe_mid(r);
    if (r.chain->count_roots(r.iv.lo, mid) == 1)
        r.iv.hi = mid;
    else
        r.iv.lo = mid;
}

// push the record strictly away from the rational point x (x is not its root)
void rec_refine_past(RootRec& r, const Rat& x) {
    while (r.iv.lo <= x && x <= r.iv.hi) {
        if (r.sf->eval(x) == 0)
            throw ContractViolation("internal: refine_past called on a root");
        if (r.chain->count_roots(r.iv.lo, x) == 1)
            r.iv.hi = x;
        else
            r.iv.lo = x;
        if (r.iv.lo == x || r.iv.hi == x) rec_refine(r);
    }
}

bool recs_overlap(const RootRec& a, const RootRec& b) {
    return a.iv.lo <= b.iv.hi && b.iv.lo <= a.iv.hi;
}

// Merges per-surface root records into globally sorted, strictly disjoint
// records; equal roots across surfaces are identified exactly (gcd test).
std::vector<RootRec> merge_roots(const std::vector<const Surface*>& surfaces,
                                 unsigned degree_cap,
                                 std::vector<std::unique_ptr<OwnedChain>>& pool) {
    std::vector<RootRec> recs;
    RootIsolationOptions opts;
    opts.degree_cap = degree_cap;
    for (const Surface* s : surfaces) {
        if (s->poly.total_degree() == 0) continue;  // constant, no roots
        UniPoly p = UniPoly::from_poly(s->poly).primitive();
        UniPoly g = gcd(p, p.derivative());
        if (g.degree() >= 1) {
            UniPoly q, r;
            UniPoly::divmod(p, g, q, r);
            p = q.primitive();
        }
        auto owned = std::make_unique<OwnedChain>();
        owned->sf = p;
        if (p.degree() >= 1) owned->chain = sturm_chain(p);
        RootIntervals ri = isolate_real_roots(p, opts);
        for (const RootInterval& iv : ri.intervals) {
            RootRec rec;
            rec.iv = iv;
            rec.sf = &owned->sf;
            rec.chain = &owned->chain;
            rec.ids = {s->id};
            recs.push_back(std::move(rec));
        }
        pool.push_back(std::move(owned));
    }

    // pinned rational roots collapse through a map; shared exact roots are
    // by far the common case and must not hit the pairwise machinery
    std::map<Rat, RootRec> pinned;
    std::vector<RootRec> boxed;
    for (RootRec& rec : recs) {
        if (rec.iv.exact) {
            auto [it, fresh] = pinned.emplace(rec.iv.lo, RootRec{});
            if (fresh) it->second = std::move(rec);
            else
                it->second.ids.insert(it->second.ids.end(), rec.ids.begin(),
                                      rec.ids.end());
        } else {
            boxed.push_back(std::move(rec));
        }
    }

    // push every interval record strictly away from every pinned point it
    // touches, or absorb it when the pinned point is its root
    for (auto it = boxed.begin(); it != boxed.end();) {
        bool absorbed = false;
        auto lo_it = pinned.lower_bound(it->iv.lo);
        for (auto p = lo_it; p != pinned.end() && p->first <= it->iv.hi;) {
            if (it->sf->eval(p->first) == 0) {
                p->second.ids.insert(p->second.ids.end(), it->ids.begin(), it->ids.end());
                absorbed = true;
                break;
            }
            rec_refine_past(*it, p->first);
            p = pinned.lower_bound(it->iv.lo);
            if (p != pinned.end() && p->first > it->iv.hi) break;
        }
        it = absorbed ? boxed.erase(it) : std::next(it);
    }

    auto by_lo = [](const RootRec& a, const RootRec& b) {
        return a.iv.lo != b.iv.lo ? a.iv.lo < b.iv.lo : a.iv.hi < b.iv.hi;
    };
    // full passes over adjacent interval pairs until a clean sweep; merges
    // and refinements both make progress, so the pass count stays small
    bool dirty = !boxed.empty();
    while (dirty) {
        dirty = false;
        std::sort(boxed.begin(), boxed.end(), by_lo);
        std::vector<bool> dead(boxed.size(), false);
        std::size_t prev = 0;  // last alive index
        for (std::size_t i = 1; i < boxed.size(); ++i) {
            RootRec& a = boxed[prev];
            RootRec& b = boxed[i];
            if (!recs_overlap(a, b)) {
                prev = i;
                continue;
            }
            dirty = true;
            for (int round = 0; round < 6 && recs_overlap(a, b); ++round) {
                rec_refine(a);
                rec_refine(b);
            }
            if (!recs_overlap(a, b)) {
                prev = i;
                continue;
            }
            UniPoly g = gcd(*a.sf, *b.sf);
            Rat jlo = std::max(a.iv.lo, b.iv.lo);
            Rat jhi = std::min(a.iv.hi, b.iv.hi);
            bool equal = false;
            if (g.degree() >= 1 && jlo < jhi) {
                auto owned = std::make_unique<OwnedChain>();
                owned->sf = g;
                owned->chain = sturm_chain(g);
                if (owned->chain.count_roots(jlo, jhi) >= 1) {
                    equal = true;
                    a.iv = {jlo, jhi, false};
                    a.sf = &owned->sf;
                    a.chain = &owned->chain;
                    a.ids.insert(a.ids.end(), b.ids.begin(), b.ids.end());
                    pool.push_back(std::move(owned));
                    dead[i] = true;
                }
            }
            if (!equal) {
                while (recs_overlap(a, b)) {
                    rec_refine(a);
                    rec_refine(b);
                }
                prev = i;
            }
        }
        std::vector<RootRec> alive;
        alive.reserve(boxed.size());
        for (std::size_t i = 0; i < boxed.size(); ++i)
            if (!dead[i]) alive.push_back(std::move(boxed[i]));
        boxed = std::move(alive);
        // merged intervals only shrink (J = a ∩ b), so the pinned points
        // stay excluded and no extra pass over them is needed
    }

    recs.clear();
    for (auto& [pos, rec] : pinned) recs.push_back(std::move(rec));
    for (RootRec& rec : boxed) recs.push_back(std::move(rec));
    std::sort(recs.begin(), recs.end(), by_lo);
    for (RootRec& rec : recs) {
        std::sort(rec.ids.begin(), rec.ids.end());
        rec.ids.erase(std::unique(rec.ids.begin(), rec.ids.end()), rec.ids.end());
    }
    return recs;
}

struct Group {
    std::vector<std::size_t> rec_idx;
    std::set<std::size_t> ids;
    Int weight = 0;
    bool singleton = false;
    Rat point;  // set when singleton
};

Cutting build_cutting_1d(std::span<const Surface> sigma, const CuttingParams& params) {
    Cutting out;
    out.dim = 1;
    out.params = params;
    AdmittedSurfaces adm = admit_surfaces(sigma, 1);
    out.warnings = adm.warnings;
    out.total_weight = adm.total_weight;

    std::map<std::size_t, Int> weight_by_id;
    for (const Surface* s : adm.list) weight_by_id[s->id] = surface_weight(*s);

    std::vector<std::unique_ptr<OwnedChain>> pool;
    std::vector<RootRec> recs = merge_roots(adm.list, params.degree_cap, pool);

    if (recs.empty()) {
        out.cells.push_back(Cell{0, Interval1D::all()});
        out.crossing.emplace_back();
        return out;
    }

    // greedy packing of consecutive roots under the crossing-weight cap,
    // optionally balanced over at most max_cells cells
    const Int& W = adm.total_weight;
    auto fits = [&](const Int& cw) { return within_cap(cw, W, params.r); };

    Int total_root_weight(0);
    std::vector<Int> rec_weight(recs.size(), Int(0));
    for (std::size_t i = 0; i < recs.size(); ++i) {
        for (std::size_t id : recs[i].ids) rec_weight[i] += weight_by_id[id];
        total_root_weight += rec_weight[i];
    }

    bool balance = params.max_cells.has_value();
    Rat target(0);
    if (balance && *params.max_cells > 0)
        target = make_rat(total_root_weight, Int(static_cast<long>(*params.max_cells)));

    std::vector<Group> groups;
    Group cur;
    auto flush = [&]() {
        if (!cur.rec_idx.empty()) groups.push_back(std::move(cur));
        cur = Group{};
    };
    for (std::size_t i = 0; i < recs.size(); ++i) {
        Int extra(0);
        for (std::size_t id : recs[i].ids)
            if (!cur.ids.count(id)) extra += weight_by_id[id];

        bool cap_forces = !cur.rec_idx.empty() && !fits(cur.weight + extra);
        bool balance_forces = balance && !cur.rec_idx.empty() &&
                              Rat(cur.weight) >= target &&
                              groups.size() + 2 <= *params.max_cells;
        if (cap_forces || balance_forces) flush();

        if (cur.rec_idx.empty() && !fits(rec_weight[i])) {
            if (!recs[i].iv.exact)
                throw RetriesExhausted(
                    "1-D cutting: root shared by surfaces of weight exceeding m/r is not "
                    "rational; no cell with rational endpoints can satisfy the bound near " +
                    rat_to_string(recs[i].iv.lo));
            Group g;
            g.rec_idx = {i};
            for (std::size_t id : recs[i].ids) g.ids.insert(id);
            g.weight = rec_weight[i];
            g.singleton = true;
            g.point = recs[i].iv.lo;
            groups.push_back(std::move(g));
            continue;
        }
        cur.rec_idx.push_back(i);
        for (std::size_t id : recs[i].ids)
            if (cur.ids.insert(id).second) cur.weight += weight_by_id[id];
    }
    flush();

    // cut positions: separators between adjacent groups, singleton points
    struct CutPos {
        Rat pos;
        bool singleton;
    };
    std::vector<CutPos> cuts;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (groups[gi].singleton) {
            cuts.push_back({groups[gi].point, true});
            continue;
        }
        if (gi + 1 < groups.size() && !groups[gi + 1].singleton) {
            const RootRec& left = recs[groups[gi].rec_idx.back()];
            const RootRec& right = recs[groups[gi + 1].rec_idx.front()];
            cuts.push_back({(left.iv.hi + right.iv.lo) / 2, false});
        }
    }
    std::sort(cuts.begin(), cuts.end(),
              [](const CutPos& a, const CutPos& b) { return a.pos < b.pos; });

    std::optional<Rat> cur_lo;
    bool cur_lo_closed = false;
    std::size_t next_id = 0;
    auto emit = [&](Interval1D iv) {
        out.cells.push_back(Cell{next_id++, std::move(iv)});
        out.crossing.emplace_back();
    };
    for (const CutPos& c : cuts) {
        emit(Interval1D{cur_lo, c.pos, cur_lo_closed, false});
        if (c.singleton) {
            emit(Interval1D::point(c.pos));
            cur_lo = c.pos;
            cur_lo_closed = false;
        } else {
            cur_lo = c.pos;
            cur_lo_closed = true;
        }
    }
    emit(Interval1D{cur_lo, std::nullopt, cur_lo_closed, false});

    // assign each record's surfaces to the unique cell containing its root;
    // no cut point meets any record's closed interval, so the interval sits
    // inside one half-open cell and rec.iv.lo locates it
    for (const RootRec& rec : recs) {
        std::size_t home = out.cells.size();
        for (std::size_t ci = 0; ci < out.cells.size(); ++ci)
            if (std::get<Interval1D>(out.cells[ci].geom).contains(rec.iv.lo)) {
                home = ci;
                break;
            }
        if (home == out.cells.size())
            throw ContractViolation("internal: root record not assigned to a cell");
        // a point cell at the root is contained in the surface, not crossed
        if (std::get<Interval1D>(out.cells[home].geom).is_point()) continue;
        for (std::size_t id : rec.ids) out.crossing[home].push_back(id);
    }
    for (auto& list : out.crossing) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    for (const auto& list : out.crossing) {
        Int cw(0);
        for (std::size_t id : list) cw += weight_by_id[id];
        if (Rat(cw) > out.max_crossing_weight) out.max_crossing_weight = Rat(cw);
        if (!fits(cw))
            throw RetriesExhausted("1-D cutting: crossing cap violated after packing");
    }
    return out;
}

// ---- exact 2-D linear backend ---------------------------------------------

struct NormLine {
    Rat slope, offset;  // y = slope*x + offset
    bool vertical = false;
    Rat x0;  // when vertical
    Rat at(const Rat& x) const { return slope * x + offset; }
};

std::optional<NormLine> as_line(const Poly& p) {
    if (p.total_degree() != 1) return std::nullopt;
    LinearForm f = linear_form_of(p);
    NormLine l;
    if (f.b == 0) {
        l.vertical = true;
        l.x0 = -f.c / f.a;
    } else {
        l.slope = -f.a / f.b;
        l.offset = -f.c / f.b;
    }
    return l;
}

std::string line_key(const NormLine& l) {
    if (l.vertical) return "v:" + rat_to_string(l.x0);
    return rat_to_string(l.slope) + ":" + rat_to_string(l.offset);
}

struct SampledArrangement {
    std::vector<NormLine> lines;     // non-vertical
    std::vector<Rat> walls;          // vertical sample x positions
};

std::vector<Cell> trapezoid_decomposition(const SampledArrangement& arr) {
    std::vector<Rat> xs = arr.walls;
    for (std::size_t i = 0; i < arr.lines.size(); ++i)
        for (std::size_t j = i + 1; j < arr.lines.size(); ++j) {
            const NormLine& a = arr.lines[i];
            const NormLine& b = arr.lines[j];
            if (a.slope == b.slope) continue;
            xs.push_back((b.offset - a.offset) / (a.slope - b.slope));
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    // slabs with representative interior points
    struct Slab {
        RatInterval xr;
        Rat probe;
    };
    std::vector<Slab> slabs;
    if (xs.empty()) {
        slabs.push_back({RatInterval::all(), Rat(0)});
    } else {
        slabs.push_back({RatInterval{std::nullopt, xs.front(), false, false},
                         xs.front() - 1});
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            slabs.push_back({RatInterval{xs[i], xs[i + 1], true, false},
                             (xs[i] + xs[i + 1]) / 2});
        slabs.push_back({RatInterval{xs.back(), std::nullopt, true, false},
                         xs.back() + 1});
    }

    // per slab: lines sorted by height at the probe; strips keyed by the
    // bounding pair so runs merge across slabs
    struct OpenRun {
        RatInterval xr;
        std::optional<LineFn> lower, upper;
    };
    auto key_of = [](int lo, int hi) { return std::pair<int, int>(lo, hi); };
    std::map<std::pair<int, int>, OpenRun> open;
    std::vector<Cell> cells;
    std::size_t next_id = 0;
    auto close_run = [&](OpenRun&& run) {
        Trapezoid2D t;
        t.xr = run.xr;
        t.lower = run.lower;
        t.upper = run.upper;
        cells.push_back(Cell{next_id++, std::move(t)});
    };

    std::set<Rat> wall_set(arr.walls.begin(), arr.walls.end());
    for (const Slab& slab : slabs) {
        // never merge runs across a sampled vertical wall
        if (slab.xr.lo && wall_set.count(*slab.xr.lo)) {
            for (auto& [k, run] : open) close_run(std::move(run));
            open.clear();
        }
        std::vector<int> order(arr.lines.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            Rat ya = arr.lines[a].at(slab.probe), yb = arr.lines[b].at(slab.probe);
            if (ya == yb)
                throw ContractViolation("internal: line height tie inside an open slab");
            return ya < yb;
        });

        std::map<std::pair<int, int>, OpenRun> next_open;
        for (std::size_t s = 0; s <= order.size(); ++s) {
            int lo_id = s == 0 ? -1 : order[s - 1];
            int hi_id = s == order.size() ? -1 : order[s];
            auto key = key_of(lo_id, hi_id);
            auto it = open.find(key);
            OpenRun run;
            if (it != open.end()) {
                run = std::move(it->second);
                open.erase(it);
                run.xr.hi = slab.xr.hi;
                run.xr.hi_closed = false;
            } else {
                run.xr = slab.xr;
                if (lo_id >= 0)
                    run.lower = LineFn{arr.lines[lo_id].slope, arr.lines[lo_id].offset};
                if (hi_id >= 0)
                    run.upper = LineFn{arr.lines[hi_id].slope, arr.lines[hi_id].offset};
            }
            next_open.emplace(key, std::move(run));
        }
        for (auto& [k, run] : open) close_run(std::move(run));
        open = std::move(next_open);
    }
    for (auto& [k, run] : open) {
        run.xr.hi = std::nullopt;
        close_run(std::move(run));
    }
    return cells;
}

Cutting build_cutting_2d_linear(std::span<const Surface> sigma, const CuttingParams& params) {
    AdmittedSurfaces adm = admit_surfaces(sigma, 2);
    for (const Surface* s : adm.list)
        if (s->poly.total_degree() > 1)
            throw BackendUnsupported("2d-linear backend: surface " + std::to_string(s->id) +
                                     " has degree > 1 (use 2d-subdivision)");

    // geometric dedup of candidate sample lines, weights accumulated per line
    std::map<std::string, std::pair<NormLine, Int>> candidates;
    for (const Surface* s : adm.list) {
        auto l = as_line(s->poly);
        if (!l) continue;  // constants are never sampled
        auto [it, fresh] = candidates.emplace(line_key(*l), std::make_pair(*l, Int(0)));
        it->second.second += surface_weight(*s);
    }
    std::vector<std::pair<NormLine, Int>> cand;
    cand.reserve(candidates.size());
    for (auto& [k, v] : candidates) cand.push_back(v);

    double rd = std::max(params.r.get_d(), 1.0);
    std::size_t s_target = static_cast<std::size_t>(std::ceil(4.0 * rd * std::log(rd + 1.0)));
    s_target = std::max<std::size_t>(s_target, 1);
    if (params.max_cells) {
        std::size_t s_max = 0;
        while (1 + (s_max + 1) + 3 * ((s_max + 1) * s_max / 2) <= *params.max_cells) ++s_max;
        s_target = std::min(s_target, s_max);
    }
    s_target = std::min(s_target, cand.size());

    std::vector<Int> cum;
    Int cand_total(0);
    for (auto& [l, w] : cand) {
        cand_total += w;
        cum.push_back(cand_total);
    }

    const Int& W = adm.total_weight;
    std::string last_failure;
    for (unsigned attempt = 0; attempt <= params.max_retries; ++attempt) {
        Rng rng(derive_seed(params.seed, attempt));
        std::set<std::size_t> picked;
        for (std::size_t draw = 0; draw < s_target && !cand.empty(); ++draw) {
            Int t = uniform_int_below(cand_total, rng);
            // first index with cum[idx] > t
            auto it = std::upper_bound(cum.begin(), cum.end(), t);
            picked.insert(static_cast<std::size_t>(it - cum.begin()));
        }

        SampledArrangement arr;
        for (std::size_t idx : picked) {
            const NormLine& l = cand[idx].first;
            if (l.vertical) arr.walls.push_back(l.x0);
            else arr.lines.push_back(l);
        }
        std::sort(arr.walls.begin(), arr.walls.end());
        arr.walls.erase(std::unique(arr.walls.begin(), arr.walls.end()), arr.walls.end());

        Cutting out;
        out.dim = 2;
        out.params = params;
        out.warnings = adm.warnings;
        out.total_weight = W;
        out.cells = trapezoid_decomposition(arr);
        out.crossing.assign(out.cells.size(), {});

        bool ok = true;
        out.max_crossing_weight = Rat(0);
        for (std::size_t ci = 0; ci < out.cells.size() && ok; ++ci) {
            Int cw(0);
            for (const Surface* s : adm.list) {
                if (crosses(*s, out.cells[ci], params.degree_cap)) {
                    out.crossing[ci].push_back(s->id);
                    cw += surface_weight(*s);
                }
            }
            if (Rat(cw) > out.max_crossing_weight) out.max_crossing_weight = Rat(cw);
            if (!within_cap(cw, W, params.r)) {
                ok = false;
                std::ostringstream os;
                os << "2d-linear cutting attempt " << attempt << ": "
                   << out.cells[ci].describe() << " crossed by weight " << cw << " > W/r";
                last_failure = os.str();
            }
        }
        if (ok) return out;
    }
    throw RetriesExhausted("2d-linear cutting: retries exhausted; last failure: " +
                           last_failure);
}

// ---- conservative subdivision backend --------------------------------------

Cutting build_cutting_2d_subdivision(std::span<const Surface> sigma,
                                     const CuttingParams& params, const PointSet* pts) {
    AdmittedSurfaces adm = admit_surfaces(sigma, 2);
    for (const Surface* s : adm.list)
        if (s->poly.total_degree() > params.degree_cap)
            throw BackendUnsupported("2d-subdivision backend: surface degree exceeds cap");

    Rat x_lo, x_hi, y_lo, y_hi;
    if (params.box) {
        x_lo = (*params.box)[0];
        x_hi = (*params.box)[1];
        y_lo = (*params.box)[2];
        y_hi = (*params.box)[3];
    } else if (pts && !pts->points.empty()) {
        if (pts->dim != 2)
            throw ContractViolation("subdivision backend: points must be planar");
        x_lo = x_hi = pts->points[0][0];
        y_lo = y_hi = pts->points[0][1];
        for (const Point& p : pts->points) {
            x_lo = std::min(x_lo, p[0]);
            x_hi = std::max(x_hi, p[0]);
            y_lo = std::min(y_lo, p[1]);
            y_hi = std::max(y_hi, p[1]);
        }
        x_lo -= 1; y_lo -= 1; x_hi += 1; y_hi += 1;
    } else {
        throw ContractViolation(
            "subdivision backend: need a point set or an explicit root box");
    }

    const Int& W = adm.total_weight;

    struct Node {
        Box2D box;
        std::vector<const Surface*> candidates;
        unsigned depth;
    };
    std::vector<Node> stack;
    Node root{Box2D{x_lo, x_hi, y_lo, y_hi, false}, {}, 0};
    for (const Surface* s : adm.list) root.candidates.push_back(s);
    stack.push_back(std::move(root));

    Cutting out;
    out.dim = 2;
    out.params = params;
    out.warnings = adm.warnings;
    out.total_weight = W;
    std::size_t next_id = 0;

    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        Cell cell{0, n.box};
        std::vector<const Surface*> hits;
        Int cw(0);
        for (const Surface* s : n.candidates)
            if (crosses(*s, cell, params.degree_cap)) {
                hits.push_back(s);
                cw += surface_weight(*s);
            }
        if (within_cap(cw, W, params.r) || hits.empty()) {
            cell.id = next_id++;
            std::vector<std::size_t> ids;
            for (const Surface* s : hits) ids.push_back(s->id);
            std::sort(ids.begin(), ids.end());
            if (Rat(cw) > out.max_crossing_weight) out.max_crossing_weight = Rat(cw);
            out.cells.push_back(std::move(cell));
            out.crossing.push_back(std::move(ids));
            continue;
        }
        if (n.depth >= params.depth_cap)
            throw RetriesExhausted("2d-subdivision: depth cap reached at " + cell.describe() +
                                   " with conservative crossing weight " + cw.get_str());
        Rat xm = (n.box.x_lo + n.box.x_hi) / 2;
        Rat ym = (n.box.y_lo + n.box.y_hi) / 2;
        for (int q = 0; q < 4; ++q) {
            Node child;
            child.box = Box2D{q % 2 ? xm : n.box.x_lo, q % 2 ? n.box.x_hi : xm,
                              q / 2 ? ym : n.box.y_lo, q / 2 ? n.box.y_hi : ym, false};
            child.candidates = hits;
            child.depth = n.depth + 1;
            stack.push_back(std::move(child));
        }
    }

    // single unbounded complement cell; every non-constant surface may cross
    Cell comp{next_id++, Box2D{x_lo, x_hi, y_lo, y_hi, true}};
    std::vector<std::size_t> comp_ids;
    for (const Surface* s : adm.list)
        if (!s->poly.is_constant()) comp_ids.push_back(s->id);
    std::sort(comp_ids.begin(), comp_ids.end());
    out.cells.push_back(std::move(comp));
    out.crossing.push_back(std::move(comp_ids));
    out.warnings.push_back(
        "subdivision cutting: the complement cell is exempt from the m/r cap "
        "(conservative crossing list)");
    return out;
}

}  // namespace

Cutting build_cutting(std::span<const Surface> sigma, const CuttingParams& params,
                      const PointSet* pts) {
    if (params.r <= 0) throw ContractViolation("build_cutting: r must be positive");
    switch (params.backend) {
        case CuttingBackend::Exact1D: return build_cutting_1d(sigma, params);
        case CuttingBackend::Linear2D: return build_cutting_2d_linear(sigma, params);
        case CuttingBackend::Subdivision2D:
            return build_cutting_2d_subdivision(sigma, params, pts);
    }
    throw ContractViolation("build_cutting: unknown backend");
}

Rat Cutting::measured_c1() const {
    Rat denom = pow_rat(params.r, 2 * dim);
    return Rat(static_cast<long>(cells.size())) / denom;
}

std::size_t Cutting::cell_of(const Point& p) const {
    std::size_t found = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].contains(p)) {
            if (found != cells.size())
                throw ContractViolation("cutting: point contained in two cells");
            found = i;
        }
    }
    if (found == cells.size())
        throw ContractViolation("cutting: point contained in no cell");
    return found;
}

namespace {

bool cells_disjoint(const Cell& a, const Cell& b) {
    if (const auto* ia = std::get_if<Interval1D>(&a.geom)) {
        const auto& ib = std::get<Interval1D>(b.geom);
        return !overlaps(*ia, ib);
    }
    if (const auto* ta = std::get_if<Trapezoid2D>(&a.geom)) {
        const auto& tb = std::get<Trapezoid2D>(b.geom);
        RatInterval xs = intersect(ta->xr, tb.xr);
        if (xs.is_empty()) return true;
        // need some x in xs with max(lowers) < min(uppers)
        for (const auto* lo : {&ta->lower, &tb.lower})
            for (const auto* up : {&ta->upper, &tb.upper}) {
                if (!lo->has_value() || !up->has_value()) continue;
                xs = intersect(xs, linear_halfline((*up)->slope - (*lo)->slope,
                                                   (*up)->offset - (*lo)->offset, true));
            }
        return xs.is_empty();
    }
    const auto& ba = std::get<Box2D>(a.geom);
    const auto& bb = std::get<Box2D>(b.geom);
    if (ba.complement && bb.complement) return false;
    if (ba.complement || bb.complement) {
        const Box2D& inner = ba.complement ? bb : ba;
        const Box2D& outer = ba.complement ? ba : bb;
        // inner box must lie inside the declared root box
        return inner.x_lo >= outer.x_lo && inner.x_hi <= outer.x_hi &&
               inner.y_lo >= outer.y_lo && inner.y_hi <= outer.y_hi;
    }
    bool x_overlap = ba.x_lo < bb.x_hi && bb.x_lo < ba.x_hi;
    bool y_overlap = ba.y_lo < bb.y_hi && bb.y_lo < ba.y_hi;
    return !(x_overlap && y_overlap);
}

}  // namespace

CuttingReport verify_cutting(std::span<const Surface> sigma, const Cutting& k,
                             const PointSet& pts) {
    CuttingReport rep;
    rep.measured_c1 = k.cells.empty() ? Rat(0) : k.measured_c1();

    // pairwise disjointness (x-sorted sweep keeps the pair count sane)
    std::vector<std::size_t> order(k.cells.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto lo_key = [&](std::size_t idx) -> std::optional<Rat> {
        const Cell& c = k.cells[idx];
        if (const auto* iv = std::get_if<Interval1D>(&c.geom)) return iv->lo;
        if (const auto* t = std::get_if<Trapezoid2D>(&c.geom)) return t->xr.lo;
        const auto& b = std::get<Box2D>(c.geom);
        if (b.complement) return std::nullopt;
        return b.x_lo;
    };
    auto hi_key = [&](std::size_t idx) -> std::optional<Rat> {
        const Cell& c = k.cells[idx];
        if (const auto* iv = std::get_if<Interval1D>(&c.geom)) return iv->hi;
        if (const auto* t = std::get_if<Trapezoid2D>(&c.geom)) return t->xr.hi;
        const auto& b = std::get<Box2D>(c.geom);
        if (b.complement) return std::nullopt;
        return b.x_hi;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto la = lo_key(a), lb = lo_key(b);
        if (!la && !lb) return a < b;
        if (!la) return true;
        if (!lb) return false;
        return *la < *lb;
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto hi = hi_key(order[i]);
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            auto lj = lo_key(order[j]);
            if (hi && lj && *lj > *hi) break;
            if (!cells_disjoint(k.cells[order[i]], k.cells[order[j]])) {
                rep.disjoint_ok = false;
                rep.issues.push_back("cells " + std::to_string(k.cells[order[i]].id) +
                                     " and " + std::to_string(k.cells[order[j]].id) +
                                     " overlap");
            }
        }
    }

    // unique coverage of the sample points
    for (std::size_t pi = 0; pi < pts.points.size(); ++pi) {
        std::size_t hits = 0;
        for (const Cell& c : k.cells)
            if (c.contains(pts.points[pi])) ++hits;
        if (hits != 1) {
            rep.coverage_ok = false;
            rep.issues.push_back("point " + std::to_string(pi) + " lies in " +
                                 std::to_string(hits) + " cells");
        }
    }

    // crossing lists vs an independent recomputation
    std::map<std::size_t, const Surface*> by_id;
    for (const Surface& s : sigma) by_id[s.id] = &s;
    for (std::size_t ci = 0; ci < k.cells.size(); ++ci) {
        std::vector<std::size_t> fresh;
        Int cw(0);
        for (const Surface& s : sigma) {
            if (s.poly.is_zero()) continue;
            if (crosses(s, k.cells[ci], k.params.degree_cap)) {
                fresh.push_back(s.id);
                cw += surface_weight(s);
            }
        }
        std::sort(fresh.begin(), fresh.end());
        std::vector<std::size_t> stored = ci < k.crossing.size() ? k.crossing[ci]
                                                                 : std::vector<std::size_t>{};
        std::sort(stored.begin(), stored.end());
        if (fresh != stored) {
            rep.crossing_ok = false;
            rep.issues.push_back("crossing list of cell " + std::to_string(k.cells[ci].id) +
                                 " does not match recomputation");
        }
        rep.max_crossings = std::max(rep.max_crossings, fresh.size());
        if (Rat(cw) > rep.max_crossing_weight) rep.max_crossing_weight = Rat(cw);
    }
    return rep;
}

}  // namespace semialg
