#pragma once

// Sturm-sequence real root isolation with exact rational endpoints, and
// algebraic reals as (squarefree defining polynomial, isolating interval).

#include <optional>
#include <vector>

#include "krl/poly.hpp"

namespace krl {

class SturmChain {
   public:
    explicit SturmChain(const ZPoly& f) {
        seq_.push_back(f.pos_primitive());
        ZPoly d = f.derivative().pos_primitive();
        if (!d.is_zero()) seq_.push_back(d);
        while (seq_.size() >= 2 && seq_.back().degree() > 0) {
            const ZPoly& a = seq_[seq_.size() - 2];
            const ZPoly& b = seq_.back();
            ZPoly r = prem(a, b);
            if (r.is_zero()) break;
            // prem scales by lc(b)^(delta+1); the Sturm recurrence wants minus
            // the true remainder, so divide that scale's sign back out.
            long delta = a.degree() - b.degree();
            int scale_sign = (delta + 1) % 2 == 0 ? 1 : sgn(b.leading());
            ZPoly next = r.pos_primitive();
            if (scale_sign > 0) next = -next;
            seq_.push_back(next);
        }
    }

    int variations_at(const Rat& x) const {
        int prev = 0, var = 0;
        for (const auto& p : seq_) step(p.sign_at(x), prev, var);
        return var;
    }
    int variations_pos_inf() const {
        int prev = 0, var = 0;
        for (const auto& p : seq_) step(p.sign_at_pos_inf(), prev, var);
        return var;
    }
    int variations_neg_inf() const {
        int prev = 0, var = 0;
        for (const auto& p : seq_) step(p.sign_at_neg_inf(), prev, var);
        return var;
    }

    // distinct roots of (the squarefree part of) f in (a, b]
    int count(const Rat& a, const Rat& b) const { return variations_at(a) - variations_at(b); }
    int count_all() const { return variations_neg_inf() - variations_pos_inf(); }

   private:
    static void step(int s, int& prev, int& var) {
        if (s != 0) {
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
    }
    std::vector<ZPoly> seq_;
};

// Cauchy bound: all real roots lie in (-B, B)
inline Rat cauchy_bound(const ZPoly& p) {
    if (p.degree() <= 0) return Rat(1);
    Rat m(0);
    for (long i = 0; i < p.degree(); ++i) {
        Rat a = rat_abs(Rat(p[i]) / Rat(p.leading()));
        if (a > m) m = a;
    }
    return m + 1;
}

// One real algebraic number: the unique root of `poly` (squarefree) in
// [lo, hi], with poly(lo) != 0 unless the root is lo itself. Exact rational
// roots are stored with lo == hi.
class AlgebraicReal {
   public:
    AlgebraicReal() : poly_(ZPoly::monomial(Int(1), 1)), lo_(0), hi_(0), exact_(true) {}
    AlgebraicReal(ZPoly sf_poly, Rat lo, Rat hi)
        : poly_(std::move(sf_poly)), lo_(std::move(lo)), hi_(std::move(hi)), exact_(lo_ == hi_) {}
    static AlgebraicReal from_rational(const Rat& v) {
        std::vector<Int> c{Int(-v.get_num()), Int(v.get_den())};
        return AlgebraicReal(ZPoly(std::move(c)), v, v);
    }

    const ZPoly& defining_poly() const { return poly_; }
    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    bool exact() const { return exact_; }
    Rat width() const { return hi_ - lo_; }
    Rat mid() const { return (lo_ + hi_) / 2; }

    // One bisection step; intervals are nested and the designated root never
    // changes. A root exactly at an endpoint must be the designated one since
    // the closed interval contains exactly one root.
    void refine() {
        if (exact_) return;
        if (poly_.sign_at(hi_) == 0) {
            lo_ = hi_;
            exact_ = true;
            return;
        }
        if (poly_.sign_at(lo_) == 0) {
            hi_ = lo_;
            exact_ = true;
            return;
        }
        Rat m = mid();
        int sm = poly_.sign_at(m);
        if (sm == 0) {
            lo_ = hi_ = m;
            exact_ = true;
            return;
        }
        if (poly_.sign_at(lo_) != sm)
            hi_ = m;
        else
            lo_ = m;
    }
    void refine_below(const Rat& eps) {
        while (!exact_ && width() >= eps) refine();
    }

    double approx(double eps = 1e-12) const {
        AlgebraicReal t = *this;
        Rat e;
        e = Rat(1);
        while (e.get_d() > eps) e /= 16;
        t.refine_below(e);
        return t.mid().get_d();
    }

    AlgebraicReal negated() const { return AlgebraicReal(poly_.reflect().primitive(), -hi_, -lo_); }

   private:
    ZPoly poly_;
    Rat lo_, hi_;
    bool exact_;
};

struct IsolatedRoot {
    AlgebraicReal root;
    int multiplicity = 1;
};

// quotient of f by (x - root) for a known rational root; integer primitive
inline ZPoly divide_rational_root(const ZPoly& f, const Rat& root) {
    long d = f.degree();
    if (d < 1) throw error("divide_rational_root: degree too small");
    std::vector<Rat> b(d);
    b[d - 1] = Rat(f[d]);
    for (long i = d - 1; i >= 1; --i) b[i - 1] = Rat(f[i]) + root * b[i];
    if (Rat(f[0]) + root * b[0] != 0) throw error("divide_rational_root: not a root");
    Int den(1);
    for (auto& x : b) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> zi(b.size());
    for (size_t i = 0; i < b.size(); ++i) zi[i] = Rat(b[i] * Rat(den)).get_num();
    return ZPoly(std::move(zi)).primitive();
}

// Disjoint isolating intervals with multiplicities for every distinct real
// root of g in the open interval (lo, hi).
inline std::vector<IsolatedRoot> sturm_isolate(const ZPoly& g, const Rat& lo, const Rat& hi) {
    std::vector<IsolatedRoot> out;
    if (g.degree() <= 0 || !(lo < hi)) return out;
    for (auto& [f0, mult] : yun_decomposition(g)) {
        ZPoly f = f0;
        // endpoints are excluded (open interval); divide them out so Sturm
        // counting sees non-root endpoints
        while (f.degree() >= 1 && f.sign_at(lo) == 0) f = divide_rational_root(f, lo);
        while (f.degree() >= 1 && f.sign_at(hi) == 0) f = divide_rational_root(f, hi);
        if (f.degree() <= 0) continue;
        SturmChain chain(f);
        Rat a = lo, b = hi;
        int n = chain.count(a, b);
        if (n <= 0) continue;
        struct Seg {
            Rat a, b;
            int cnt;
        };
        std::vector<Seg> stack{{a, b, n}};
        while (!stack.empty()) {
            Seg s = stack.back();
            stack.pop_back();
            if (s.cnt == 0) continue;
            if (s.cnt == 1) {
                out.push_back({AlgebraicReal(f, s.a, s.b), mult});
                continue;
            }
            Rat m = (s.a + s.b) / 2;
            Rat nudge = (s.b - s.a) / 64;
            while (f.sign_at(m) == 0) m += nudge, nudge /= 3;
            int left = chain.count(s.a, m);
            stack.push_back({s.a, m, left});
            stack.push_back({m, s.b, s.cnt - left});
        }
    }
    // separate intervals coming from distinct Yun factors
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            AlgebraicReal& x = out[i].root;
            AlgebraicReal& y = out[j].root;
            int guard = 0;
            while (!(x.hi() < y.lo() || y.hi() < x.lo())) {
                x.refine();
                y.refine();
                if (++guard > 20000) throw error("sturm_isolate: could not separate roots");
            }
        }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.root.lo() < b.root.lo(); });
    return out;
}

inline std::vector<IsolatedRoot> sturm_isolate_all(const ZPoly& g) {
    Rat b = cauchy_bound(g);
    return sturm_isolate(g, -b, b);
}

// -1 / 0 / +1; 0 means the two algebraic numbers are genuinely equal
inline int cmp(const AlgebraicReal& a0, const AlgebraicReal& b0) {
    AlgebraicReal a = a0, b = b0;
    if (a.hi() < b.lo()) return -1;
    if (b.hi() < a.lo()) return 1;
    if (a.exact() && b.exact()) return a.lo() < b.lo() ? -1 : (a.lo() == b.lo() ? 0 : 1);
    ZPoly g = zgcd(a.defining_poly(), b.defining_poly());
    int guard = 0;
    while (true) {
        if (a.hi() < b.lo()) return -1;
        if (b.hi() < a.lo()) return 1;
        if (g.degree() >= 1) {
            // a common root inside the overlap is the designated root of both
            Rat ilo = std::max(a.lo(), b.lo()), ihi = std::min(a.hi(), b.hi());
            if (g.sign_at(ilo) == 0) return 0;
            if (SturmChain(g).count(ilo, ihi) > 0) return 0;
        }
        a.refine();
        b.refine();
        if (++guard > 100000) throw error("cmp(AlgebraicReal): refinement stalled");
    }
}

inline int cmp(const AlgebraicReal& a, const Rat& v) { return cmp(a, AlgebraicReal::from_rational(v)); }

// exact sign of the polynomial h at the algebraic real x0
inline int sign_at(const ZPoly& h, const AlgebraicReal& x0) {
    if (h.is_zero()) return 0;
    AlgebraicReal x = x0;
    if (x.exact()) return h.sign_at(x.lo());
    ZPoly g = zgcd(h, x.defining_poly());
    if (g.degree() >= 1 && (g.sign_at(x.lo()) == 0 || g.sign_at(x.lo()) * g.sign_at(x.hi()) < 0 ||
                            SturmChain(g).count(x.lo(), x.hi()) > 0))
        return 0;
    ZPoly hs = squarefree_part(h);
    SturmChain hc(hs);
    int guard = 0;
    while (true) {
        int slo = h.sign_at(x.lo()), shi = h.sign_at(x.hi());
        if (slo != 0 && slo == shi && hc.count(x.lo(), x.hi()) == 0) return slo;
        x.refine();
        if (++guard > 100000) throw error("sign_at: refinement stalled");
    }
}

// synthetic division p(t) / (t - r); returns quotient, requires p(r) == 0
inline ZPoly divide_linear(const ZPoly& p, const Int& r) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) throw error("divide_linear: degree too small");
    std::vector<Int> b(c.size() - 1);
    b[c.size() - 2] = c[c.size() - 1];
    for (size_t i = c.size() - 2; i-- > 0;) b[i] = c[i + 1] + r * b[i + 1];
    if (c[0] != -r * b[0]) throw error("divide_linear: nonzero remainder");
    return ZPoly(std::move(b));
}

// number of roots of a palindromic Laurent polynomial on the unit circle,
// counted with multiplicity
inline int count_unit_circle_roots(const Laurent& delta) {
    if (delta.is_zero()) throw error("count_unit_circle_roots: zero polynomial");
    Laurent q = normalize_symmetric(delta);
    ZPoly g = chebyshev_form(q);
    int r = 0;
    for (auto& ir : sturm_isolate(g, Rat(-2), Rat(2))) r += 2 * ir.multiplicity;
    // plus the multiplicity of t = -1 as a root of q itself
    ZPoly z = to_zpoly(q);
    while (!z.is_zero() && z.degree() >= 1 && z.sign_at(Rat(-1)) == 0) {
        z = divide_linear(z, Int(-1));
        r += 1;
    }
    return r;
}

}  // namespace krl
