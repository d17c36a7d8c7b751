#pragma once

#include <optional>

#include "semialg/rational.hpp"

namespace semialg {

// Interval of reals with optional (= infinite) endpoints and per-end
// closed/open flags. Used for exact 1-D cell geometry and for the x-range
// emptiness tests behind the 2-D crossing predicates.
struct RatInterval {
    std::optional<Rat> lo, hi;  // nullopt = unbounded on that side
    bool lo_closed = false, hi_closed = false;

    static RatInterval all() { return {}; }
    static RatInterval point(const Rat& x) { return {x, x, true, true}; }

    bool contains(const Rat& x) const {
        if (lo && (x < *lo || (x == *lo && !lo_closed))) return false;
        if (hi && (x > *hi || (x == *hi && !hi_closed))) return false;
        return true;
    }

    bool is_empty() const {
        if (!lo || !hi) return false;
        if (*lo > *hi) return true;
        if (*lo == *hi) return !(lo_closed && hi_closed);
        return false;
    }

    bool is_point() const { return lo && hi && *lo == *hi && lo_closed && hi_closed; }

    friend RatInterval intersect(const RatInterval& a, const RatInterval& b) {
        RatInterval out;
        if (a.lo && b.lo) {
            if (*a.lo > *b.lo) { out.lo = a.lo; out.lo_closed = a.lo_closed; }
            else if (*b.lo > *a.lo) { out.lo = b.lo; out.lo_closed = b.lo_closed; }
            else { out.lo = a.lo; out.lo_closed = a.lo_closed && b.lo_closed; }
        } else if (a.lo) { out.lo = a.lo; out.lo_closed = a.lo_closed; }
        else if (b.lo) { out.lo = b.lo; out.lo_closed = b.lo_closed; }
        if (a.hi && b.hi) {
            if (*a.hi < *b.hi) { out.hi = a.hi; out.hi_closed = a.hi_closed; }
            else if (*b.hi < *a.hi) { out.hi = b.hi; out.hi_closed = b.hi_closed; }
            else { out.hi = a.hi; out.hi_closed = a.hi_closed && b.hi_closed; }
        } else if (a.hi) { out.hi = a.hi; out.hi_closed = a.hi_closed; }
        else if (b.hi) { out.hi = b.hi; out.hi_closed = b.hi_closed; }
        return out;
    }

    friend bool overlaps(const RatInterval& a, const RatInterval& b) {
        return !intersect(a, b).is_empty();
    }
};

// Solution set of c1*x + c0 >= 0 (or > 0 when strict).
inline RatInterval linear_halfline(const Rat& c1, const Rat& c0, bool strict) {
    RatInterval out;
    if (c1 == 0) {
        bool holds = strict ? (c0 > 0) : (c0 >= 0);
        if (!holds) { out.lo = Rat(1); out.hi = Rat(0); }  // canonical empty
        return out;
    }
    Rat root = -c0 / c1;
    if (c1 > 0) { out.lo = root; out.lo_closed = !strict; }
    else { out.hi = root; out.hi_closed = !strict; }
    return out;
}

// Closed rational range used by the conservative box arithmetic.
struct RatRange {
    Rat lo, hi;

    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    friend RatRange operator+(const RatRange& a, const RatRange& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatRange operator*(const RatRange& a, const RatRange& b) {
        Rat v1 = a.lo * b.lo, v2 = a.lo * b.hi, v3 = a.hi * b.lo, v4 = a.hi * b.hi;
        Rat lo = v1, hi = v1;
        for (const Rat& v : {v2, v3, v4}) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        return {lo, hi};
    }
};

inline RatRange range_scale(const Rat& c, const RatRange& r) {
    if (c >= 0) return {c * r.lo, c * r.hi};
    return {c * r.hi, c * r.lo};
}

inline RatRange range_pow(const RatRange& r, unsigned e) {
    if (e == 0) return {Rat(1), Rat(1)};
    if (e % 2 == 1 || r.lo >= 0) return {pow_rat(r.lo, e), pow_rat(r.hi, e)};
    if (r.hi <= 0) return {pow_rat(r.hi, e), pow_rat(r.lo, e)};
    Rat a = pow_rat(r.lo, e), b = pow_rat(r.hi, e);
    return {Rat(0), a > b ? a : b};
}

}  // namespace semialg
