#pragma once

// Arbitrary-precision dyadic numbers (m * 2^e) and outward-rounded interval
// arithmetic on them, with the few transcendental enclosures the project
// needs: sqrt, atan2, pi. Precision is a per-operation bit count; escalation
// loops live in the callers.

#include <cstdlib>
#include <map>
#include <utility>

#include "krl/rational.hpp"

namespace krl {

struct Dyadic {
    Int m;
    long e = 0;
    Dyadic() : m(0) {}
    Dyadic(long v) : m(v) {}
    Dyadic(Int mm, long ee) : m(std::move(mm)), e(ee) {}

    bool is_zero() const { return sgn(m) == 0; }
    int sign() const { return sgn(m); }
    Dyadic operator-() const { return Dyadic(-m, e); }

    Rat to_rat() const {
        Rat r(m);
        if (e >= 0)
            mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
        else
            mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -e);
        return r;
    }
    double to_d() const { return to_rat().get_d(); }
};

inline Dyadic dy_add(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.e, b.e);
    Int am = a.m << (a.e - e), bm = b.m << (b.e - e);
    return Dyadic(am + bm, e);
}
inline Dyadic dy_sub(const Dyadic& a, const Dyadic& b) { return dy_add(a, -b); }
inline Dyadic dy_mul(const Dyadic& a, const Dyadic& b) { return Dyadic(a.m * b.m, a.e + b.e); }

inline int dy_cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    Dyadic d = dy_sub(a, b);
    return d.sign();
}
inline bool operator<(const Dyadic& a, const Dyadic& b) { return dy_cmp(a, b) < 0; }
inline bool operator<=(const Dyadic& a, const Dyadic& b) { return dy_cmp(a, b) <= 0; }

// round toward -inf (down=true) or +inf to `prec` mantissa bits
inline Dyadic dy_round(const Dyadic& a, long prec, bool down) {
    long bits = static_cast<long>(bit_length(a.m));
    if (bits <= prec) return a;
    long sh = bits - prec;
    Int q;
    if (down)
        mpz_fdiv_q_2exp(q.get_mpz_t(), a.m.get_mpz_t(), sh);
    else
        mpz_cdiv_q_2exp(q.get_mpz_t(), a.m.get_mpz_t(), sh);
    return Dyadic(std::move(q), a.e + sh);
}

inline Dyadic dy_div(const Dyadic& a, const Dyadic& b, long prec, bool down) {
    if (b.is_zero()) throw error("dyadic division by zero");
    if (a.is_zero()) return Dyadic();
    long la = static_cast<long>(bit_length(a.m)), lb = static_cast<long>(bit_length(b.m));
    long k = std::max(0L, prec + lb - la + 4);
    Int num = a.m << k, q;
    if (down)
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.m.get_mpz_t());
    else
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.m.get_mpz_t());
    return Dyadic(std::move(q), a.e - b.e - k);
}

// sqrt with directed rounding; requires a >= 0
inline Dyadic dy_sqrt(const Dyadic& a, long prec, bool down) {
    if (a.sign() < 0) throw error("dyadic sqrt of negative");
    if (a.is_zero()) return Dyadic();
    long bits = static_cast<long>(bit_length(a.m));
    long s = std::max(0L, 2 * prec - bits);
    if (((a.e - s) & 1) != 0) ++s;
    Int t = a.m << s;
    Int r = isqrt(t);
    if (!down && r * r != t) r += 1;
    return Dyadic(std::move(r), (a.e - s) / 2);
}

inline Dyadic dy_from_rat(const Rat& v, long prec, bool down) {
    if (sgn(v) == 0) return Dyadic();
    return dy_div(Dyadic(Int(v.get_num()), 0), Dyadic(Int(v.get_den()), 0), prec, down);
}

inline Dyadic dy_pow2(long e) { return Dyadic(Int(1), e); }

// ---------------------------------------------------------------------------
// intervals [lo, hi], outward rounding
// ---------------------------------------------------------------------------
struct DyI {
    Dyadic lo, hi;
    DyI() = default;
    DyI(Dyadic v) : lo(v), hi(v) {}
    DyI(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {}
    static DyI from_rat(const Rat& v, long prec) { return DyI(dy_from_rat(v, prec, true), dy_from_rat(v, prec, false)); }
    static DyI from_rats(const Rat& l, const Rat& h, long prec) {
        return DyI(dy_from_rat(l, prec, true), dy_from_rat(h, prec, false));
    }
    static DyI exact(long v) { return DyI(Dyadic(v)); }

    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    int sign() const {  // 0 when undecided
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    }
    bool is_exact_zero() const { return lo.is_zero() && hi.is_zero(); }
    Dyadic width() const { return dy_sub(hi, lo); }
    Dyadic mid() const {
        Dyadic s = dy_add(lo, hi);
        return dy_round(Dyadic(s.m, s.e - 1), 192, true);
    }
    DyI operator-() const { return DyI(-hi, -lo); }
    double to_d() const { return dy_add(lo, hi).to_d() / 2; }
};

inline DyI di_add(const DyI& a, const DyI& b, long prec) {
    return DyI(dy_round(dy_add(a.lo, b.lo), prec, true), dy_round(dy_add(a.hi, b.hi), prec, false));
}
inline DyI di_sub(const DyI& a, const DyI& b, long prec) {
    return DyI(dy_round(dy_sub(a.lo, b.hi), prec, true), dy_round(dy_sub(a.hi, b.lo), prec, false));
}
inline DyI di_mul(const DyI& a, const DyI& b, long prec) {
    Dyadic p1 = dy_mul(a.lo, b.lo), p2 = dy_mul(a.lo, b.hi), p3 = dy_mul(a.hi, b.lo), p4 = dy_mul(a.hi, b.hi);
    Dyadic lo = p1, hi = p1;
    for (const Dyadic* p : {&p2, &p3, &p4}) {
        if (*p < lo) lo = *p;
        if (hi < *p) hi = *p;
    }
    return DyI(dy_round(lo, prec, true), dy_round(hi, prec, false));
}
inline DyI di_div(const DyI& a, const DyI& b, long prec) {
    if (b.contains_zero()) throw precision_exhausted("interval division by interval containing zero");
    Dyadic lo = dy_div(a.lo, b.lo, prec, true), hi = dy_div(a.lo, b.lo, prec, false);
    for (auto [n, d] : {std::pair{&a.lo, &b.hi}, std::pair{&a.hi, &b.lo}, std::pair{&a.hi, &b.hi}}) {
        Dyadic qd = dy_div(*n, *d, prec, true), qu = dy_div(*n, *d, prec, false);
        if (qd < lo) lo = qd;
        if (hi < qu) hi = qu;
    }
    return DyI(dy_round(lo, prec, true), dy_round(hi, prec, false));
}
inline DyI di_sqrt(const DyI& a, long prec) {
    Dyadic lo = a.lo.sign() <= 0 ? Dyadic() : dy_sqrt(a.lo, prec, true);
    if (a.hi.sign() < 0) throw error("di_sqrt of negative interval");
    return DyI(lo, dy_sqrt(a.hi, prec, false));
}
inline DyI di_hull(const DyI& a, const DyI& b) {
    return DyI(a.lo < b.lo ? a.lo : b.lo, a.hi < b.hi ? b.hi : a.hi);
}
inline DyI di_scale2(const DyI& a, long e) { return DyI(Dyadic(a.lo.m, a.lo.e + e), Dyadic(a.hi.m, a.hi.e + e)); }
inline DyI di_mul_long(const DyI& a, long v, long prec) { return di_mul(a, DyI(Dyadic(v)), prec); }

// true iff certified a < b
inline bool di_lt(const DyI& a, const DyI& b) { return dy_cmp(a.hi, b.lo) < 0; }

// ---------------------------------------------------------------------------
// atan, atan2, pi
// ---------------------------------------------------------------------------
inline DyI pi_enclosure(long prec);

namespace detail {

inline DyI atan_series(const DyI& x, long prec) {
    // |x| <= ~0.5; alternating Maclaurin series with first-omitted-term bound
    long wp = prec + 16;
    DyI x2 = di_mul(x, x, wp);
    DyI term = x, sum = x;
    long k = 1;
    while (true) {
        term = di_mul(term, x2, wp);
        DyI t = di_div(term, DyI(Dyadic(2 * k + 1)), wp);
        sum = (k % 2 == 1) ? di_sub(sum, t, wp) : di_add(sum, t, wp);
        Dyadic mag = dy_cmp(t.hi, -t.lo) < 0 ? -t.lo : t.hi;
        if (mag < dy_pow2(-prec - 8)) {
            DyI rem(-mag, mag);
            return di_add(sum, rem, wp);
        }
        ++k;
        if (k > 10000) throw error("atan series failed to converge");
    }
}

inline DyI atan_core(const DyI& x, long prec);

inline DyI atan_point(const Dyadic& d, long prec) { return atan_core(DyI(d), prec); }

inline DyI atan_core(const DyI& x, long prec) {
    long wp = prec + 16;
    if (x.hi.sign() < 0) return -atan_core(-x, prec);
    if (x.lo.sign() < 0) return di_hull(atan_point(x.lo, prec), atan_point(x.hi, prec));
    // x >= 0: atan(z) = 2 atan(z / (1 + sqrt(1 + z^2))) halves any argument
    // below 1 and then geometrically; reduce under 7/16, then the series.
    DyI y = x;
    int halvings = 0;
    Dyadic cutoff(Int(7), -4);
    while (dy_cmp(y.hi, cutoff) > 0) {
        DyI s = di_sqrt(di_add(DyI(Dyadic(1)), di_mul(y, y, wp), wp), wp);
        y = di_div(y, di_add(DyI(Dyadic(1)), s, wp), wp);
        if (++halvings > 80) throw error("atan_core: reduction failed");
    }
    return di_scale2(atan_series(y, prec + 2), halvings);
}

}  // namespace detail

inline DyI pi_enclosure(long prec) {
    thread_local std::map<long, DyI> cache;
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
    long wp = prec + 24;
    DyI inv5 = di_div(DyI(Dyadic(1)), DyI(Dyadic(5)), wp);
    DyI inv239 = di_div(DyI(Dyadic(1)), DyI(Dyadic(239)), wp);
    DyI pi = di_sub(di_scale2(detail::atan_series(inv5, wp), 4), di_scale2(detail::atan_series(inv239, wp), 2), wp);
    cache[prec] = pi;
    return pi;
}

inline DyI di_atan(const DyI& x, long prec) { return detail::atan_core(x, prec); }

// escalation ceiling in bits; KRL_PRECISION_CAP overrides the 2^14 default
inline long precision_cap() {
    if (const char* env = std::getenv("KRL_PRECISION_CAP")) {
        long v = std::atol(env);
        if (v >= 64) return v;
    }
    return 1 << 14;
}

// rational lower/upper bounds for sqrt(v), v >= 0
inline std::pair<Rat, Rat> rat_sqrt_bounds(const Rat& v, long bits = 96) {
    if (sgn(v) < 0) throw error("rat_sqrt_bounds: negative");
    if (sgn(v) == 0) return {Rat(0), Rat(0)};
    Dyadic lo = dy_sqrt(dy_from_rat(v, 2 * bits, true), bits, true);
    Dyadic hi = dy_sqrt(dy_from_rat(v, 2 * bits, false), bits, false);
    return {lo.to_rat(), hi.to_rat()};
}

// certified atan2(y, x) in (-pi, pi]; throws precision_exhausted when the
// quadrant cannot be pinned at this precision
inline DyI di_atan2(const DyI& y, const DyI& x, long prec) {
    long wp = prec + 16;
    DyI pi = pi_enclosure(wp);
    DyI half_pi = di_scale2(pi, -1);
    if (y.sign() > 0) return di_sub(half_pi, di_atan(di_div(x, y, wp), prec), wp);
    if (y.sign() < 0) return di_sub(-half_pi, di_atan(di_div(x, y, wp), prec), wp);
    if (y.is_exact_zero()) {
        if (x.sign() > 0) return DyI(Dyadic(0));
        if (x.sign() < 0) return pi;
        throw precision_exhausted("atan2(0, ~0)");
    }
    if (x.sign() > 0) return di_atan(di_div(y, x, wp), prec);
    throw precision_exhausted("atan2: quadrant not determined");
}

}  // namespace krl
