#include "semialg/sturm.hpp"

#include <algorithm>

#include "semialg/errors.hpp"

namespace semialg {

UniPoly::UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void UniPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::from_poly(const Poly& p) {
    if (p.num_vars() != 1)
        throw ContractViolation("UniPoly::from_poly: polynomial is not univariate");
    std::vector<Rat> c(p.total_degree() + 1, Rat(0));
    for (const auto& [e, k] : p.terms()) c[e[0]] = k;
    return UniPoly(std::move(c));
}

Poly UniPoly::to_poly() const {
    Poly p(1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        p.add_term({static_cast<unsigned>(i)}, coeffs_[i]);
    return p;
}

Rat UniPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int UniPoly::sign_at_pos_inf() const {
    return coeffs_.empty() ? 0 : sign_of(coeffs_.back());
}

int UniPoly::sign_at_neg_inf() const {
    if (coeffs_.empty()) return 0;
    int s = sign_of(coeffs_.back());
    return (degree() % 2 == 0) ? s : -s;
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return UniPoly{};
    std::vector<Rat> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        c[i - 1] = Rat(static_cast<long>(i)) * coeffs_[i];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-() const {
    std::vector<Rat> c(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = -coeffs_[i];
    return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return UniPoly(std::move(c));
}

UniPoly operator*(const Rat& k, const UniPoly& p) {
    if (k == 0) return UniPoly{};
    std::vector<Rat> c(p.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * p.coeffs_[i];
    return UniPoly(std::move(c));
}

void UniPoly::divmod(const UniPoly& num, const UniPoly& den, UniPoly& quot, UniPoly& rem) {
    if (den.is_zero()) throw ContractViolation("UniPoly::divmod: division by zero polynomial");
    std::vector<Rat> r = num.coeffs_;
    std::vector<Rat> q;
    int dn = den.degree();
    if (num.degree() >= dn) q.assign(num.degree() - dn + 1, Rat(0));
    while (static_cast<int>(r.size()) - 1 >= dn) {
        if (r.back() == 0) {
            r.pop_back();
            continue;
        }
        int shift = static_cast<int>(r.size()) - 1 - dn;
        Rat factor = r.back() / den.leading();
        q[shift] = factor;
        for (int i = 0; i <= dn; ++i) r[shift + i] -= factor * den.coeffs_[i];
        r.pop_back();  // leading term cancels exactly
    }
    quot = UniPoly(std::move(q));
    rem = UniPoly(std::move(r));
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return UniPoly{};
    Int den_lcm(1);
    for (const Rat& c : coeffs_) {
        if (c == 0) continue;
        Int l;
        mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        den_lcm = l;
    }
    Int num_gcd(0);
    for (const Rat& c : coeffs_) {
        if (c == 0) continue;
        Int scaled = c.get_num() * (den_lcm / c.get_den());
        Int g;
        mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
        num_gcd = g;
    }
    // positive scalar: dividing by it preserves the sign of every value
    Rat scale = make_rat(den_lcm, num_gcd);
    return scale * *this;
}

Rat UniPoly::cauchy_root_bound() const {
    if (is_zero() || degree() == 0) return Rat(1);
    Rat max_ratio(0);
    for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
        Rat r = abs_rat(coeffs_[i] / leading());
        if (r > max_ratio) max_ratio = r;
    }
    return Rat(1) + max_ratio;  // every root has |x| < bound strictly
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a.primitive(), y = b.primitive();
    while (!y.is_zero()) {
        UniPoly q, r;
        UniPoly::divmod(x, y, q, r);
        x = y;
        y = r.primitive();
    }
    if (!x.is_zero() && sign_of(x.leading()) < 0) x = Rat(-1) * x;
    return x;
}

SturmChain sturm_chain(const UniPoly& p) {
    if (p.is_zero()) throw ContractViolation("sturm_chain: zero polynomial");
    SturmChain chain;
    chain.seq.push_back(p.primitive());
    if (p.degree() == 0) return chain;
    chain.seq.push_back(p.derivative().primitive());
    while (!chain.seq.back().is_zero() && chain.seq.back().degree() > 0) {
        const UniPoly& a = chain.seq[chain.seq.size() - 2];
        const UniPoly& b = chain.seq.back();
        UniPoly q, r;
        UniPoly::divmod(a, b, q, r);
        if (r.is_zero()) break;
        chain.seq.push_back((Rat(-1) * r).primitive());
    }
    return chain;
}

namespace {

int count_variations(const std::vector<int>& signs) {
    int v = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace

int SturmChain::variations_at(const Rat& x) const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const UniPoly& p : seq) signs.push_back(p.sign_at(x));
    return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const UniPoly& p : seq) signs.push_back(p.sign_at_pos_inf());
    return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const UniPoly& p : seq) signs.push_back(p.sign_at_neg_inf());
    return count_variations(signs);
}

int SturmChain::count_roots(const Rat& a, const Rat& b) const {
    if (a > b) throw ContractViolation("SturmChain::count_roots: a > b");
    return variations_at(a) - variations_at(b);
}

int SturmChain::count_all_roots() const {
    return variations_at_neg_inf() - variations_at_pos_inf();
}

int sturm_variations(const SturmChain& chain, const Rat& x) { return chain.variations_at(x); }

namespace {

// Midpoint of (lo, hi) that is not a root of p; nudges toward lo on hits.
Rat safe_mid(const UniPoly& p, const Rat& lo, const Rat& hi) {
    Rat mid = (lo + hi) / 2;
    while (p.eval(mid) == 0) mid = (lo + mid) / 2;
    return mid;
}

// Bisection isolation over (lo, hi]; endpoints are non-roots. Rational roots
// hit by a split point get pinned on the fly (only reachable when divisor
// enumeration was skipped).
void isolate_in(const SturmChain& chain, const UniPoly& p, const Rat& lo, const Rat& hi,
                int nroots, std::vector<RootInterval>& out, std::vector<Rat>& pinned) {
    if (nroots == 0) return;
    if (nroots == 1) {
        out.push_back({lo, hi, false});
        return;
    }
    Rat mid = (lo + hi) / 2;
    if (p.eval(mid) == 0) {
        pinned.push_back(mid);
        Rat delta = (hi - lo) / 4;
        while (p.eval(mid - delta) == 0 || p.eval(mid + delta) == 0 ||
               chain.count_roots(mid - delta, mid + delta) > 1)
            delta /= 2;
        isolate_in(chain, p, lo, mid - delta, chain.count_roots(lo, mid - delta), out, pinned);
        isolate_in(chain, p, mid + delta, hi, chain.count_roots(mid + delta, hi), out, pinned);
        return;
    }
    int left = chain.count_roots(lo, mid);
    isolate_in(chain, p, lo, mid, left, out, pinned);
    isolate_in(chain, p, mid, hi, nroots - left, out, pinned);
}

// Positive divisors of |n| by trial division.
std::vector<Int> divisors_of(const Int& n) {
    Int a = abs(n);
    std::vector<Int> out;
    for (Int d(1); d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            if (d * d != a) out.push_back(a / d);
        }
    }
    return out;
}

constexpr std::size_t kMaxRationalCandidates = 4096;

// Deflates the rational roots of the squarefree polynomial p (in place);
// returns them unsorted. Best effort: skipped when the divisor enumeration
// would be too large.
std::vector<Rat> extract_rational_roots(UniPoly& p, const Int& divisor_bound) {
    std::vector<Rat> roots;
    if (p.degree() >= 1 && p.coeffs().front() == 0) {
        std::vector<Rat> c(p.coeffs().begin() + 1, p.coeffs().end());
        p = UniPoly(std::move(c));
        roots.push_back(Rat(0));  // simple root: input is squarefree
    }
    if (p.degree() < 1) return roots;
    UniPoly prim = p.primitive();
    const Int lead = prim.leading().get_num();
    const Int trail = prim.coeffs().front().get_num();
    if (abs(lead) > divisor_bound || abs(trail) > divisor_bound) return roots;

    auto ps = divisors_of(trail);
    auto qs = divisors_of(lead);
    if (ps.size() * qs.size() > kMaxRationalCandidates) return roots;
    for (const Int& pp : ps) {
        for (const Int& qq : qs) {
            for (int s : {1, -1}) {
                if (p.degree() < 1) return roots;
                Rat cand = make_rat(s * pp, qq);
                if (p.eval(cand) != 0) continue;
                roots.push_back(cand);
                UniPoly div(std::vector<Rat>{-cand, Rat(1)});
                UniPoly q, r;
                UniPoly::divmod(p, div, q, r);
                p = q;
            }
        }
    }
    return roots;
}

}  // namespace

RootIntervals isolate_real_roots(const UniPoly& input, const RootIsolationOptions& opts) {
    if (input.is_zero())
        throw ContractViolation("isolate_real_roots: zero polynomial (zero set is all of R)");
    if (input.degree() > static_cast<int>(opts.degree_cap))
        throw BudgetExceeded("isolate_real_roots: degree " + std::to_string(input.degree()) +
                             " exceeds cap " + std::to_string(opts.degree_cap));
    RootIntervals out;
    if (input.degree() == 0) return out;

    // squarefree part: distinct roots of the input, all simple
    UniPoly p = input.primitive();
    UniPoly g = gcd(p, p.derivative());
    if (g.degree() >= 1) {
        UniPoly q, r;
        UniPoly::divmod(p, g, q, r);
        p = q.primitive();
    }

    std::vector<Rat> pinned = extract_rational_roots(p, opts.divisor_bound);
    std::vector<RootInterval> work;

    if (p.degree() >= 1) {
        SturmChain chain = sturm_chain(p);
        Rat bound = p.cauchy_root_bound();
        int total = chain.count_roots(-bound, bound);
        isolate_in(chain, p, -bound, bound, total, work, pinned);

        // shrink isolation intervals clear of pinned roots and of each other
        auto refine_once = [&](RootInterval& iv) {
            Rat mid = safe_mid(p, iv.lo, iv.hi);
            if (chain.count_roots(iv.lo, mid) == 1)
                iv.hi = mid;
            else
                iv.lo = mid;
        };
        std::sort(pinned.begin(), pinned.end());
        for (RootInterval& iv : work)
            for (const Rat& r : pinned)
                while (iv.lo <= r && r <= iv.hi) refine_once(iv);
        std::sort(work.begin(), work.end(),
                  [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
        for (std::size_t i = 0; i + 1 < work.size(); ++i)
            while (work[i].hi >= work[i + 1].lo) {
                refine_once(work[i]);
                refine_once(work[i + 1]);
            }
    }

    for (const Rat& r : pinned) work.push_back({r, r, true});
    std::sort(work.begin(), work.end(), [](const RootInterval& a, const RootInterval& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    out.intervals = std::move(work);
    return out;
}

RootIntervals isolate_real_roots(const Poly& p, const RootIsolationOptions& opts) {
    return isolate_real_roots(UniPoly::from_poly(p), opts);
}

}  // namespace semialg
