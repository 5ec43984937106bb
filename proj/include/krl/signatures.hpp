#pragma once

// Levine-Tristram signature step functions on alpha in [0, pi], the set D_K
// of forbidden meridian traces, the partition width w_K, and the Litherland
// jump formula for torus knots.
//
// Angles never appear as floats in the core: a jump at alpha is stored as the
// algebraic number c = 2 cos(alpha), which is strictly decreasing in alpha,
// so "sorted by alpha" means "sorted by descending c".

#include <cstdlib>

#include "krl/dyadic.hpp"
#include "krl/knots.hpp"

namespace krl {

struct not_seifert : error {
    using error::error;
};
struct on_jump : error {
    using error::error;
};
struct no_signature : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// step function sigma_K(e^{2 i alpha}) on [0, pi]
// ---------------------------------------------------------------------------
class SignatureStep {
   public:
    SignatureStep() : values_{0} {}
    SignatureStep(std::vector<AlgebraicReal> jumps_desc_c, std::vector<int> mult, std::vector<int> values)
        : jumps_(std::move(jumps_desc_c)), mult_(std::move(mult)), values_(std::move(values)) {
        if (values_.size() != jumps_.size() + 1) throw error("SignatureStep: size mismatch");
        if (values_.front() != 0 || values_.back() != 0) throw error("SignatureStep: endpoint values must be 0");
        for (size_t i = 0; i + 1 < values_.size(); ++i) {
            int d = values_[i + 1] - values_[i];
            if (d == 0 || d % 2 != 0) throw error("SignatureStep: jumps must be nonzero even");
            if (std::abs(d) > 2 * mult_[i]) throw error("SignatureStep: jump exceeds 2 * multiplicity");
        }
        for (size_t i = 0; i + 1 < values_.size(); ++i)
            if (values_[i] != values_[values_.size() - 1 - i]) throw error("SignatureStep: values not symmetric");
    }

    const std::vector<AlgebraicReal>& jumps() const { return jumps_; }
    const std::vector<int>& multiplicities() const { return mult_; }
    const std::vector<int>& values() const { return values_; }
    bool constant_zero() const { return jumps_.empty(); }

    // value on the open interval containing alpha = arccos(c/2); errors out
    // if c is exactly a jump
    int value_at_c(const Rat& c) const {
        return values_.at(interval_index_of_c(c));
    }
    size_t interval_index_of_c(const Rat& c) const {
        if (!(Rat(-2) < c && c < Rat(2))) throw error("value_at_c: c outside (-2,2)");
        size_t idx = 0;
        AlgebraicReal cv = AlgebraicReal::from_rational(c);
        for (const auto& j : jumps_) {
            int s = cmp(j, cv);
            if (s == 0) throw on_jump("sample lies exactly on a signature jump");
            if (s > 0) ++idx;
        }
        return idx;
    }
    int value_on_interval(size_t i) const { return values_.at(i); }
    size_t interval_count() const { return values_.size(); }

    SignatureStep negated() const {
        std::vector<int> v(values_);
        for (auto& x : v) x = -x;
        return SignatureStep(jumps_, mult_, std::move(v));
    }

    friend bool equal_steps(const SignatureStep& a, const SignatureStep& b) {
        if (a.values_ != b.values_ || a.mult_ != b.mult_ || a.jumps_.size() != b.jumps_.size()) return false;
        for (size_t i = 0; i < a.jumps_.size(); ++i)
            if (cmp(a.jumps_[i], b.jumps_[i]) != 0) return false;
        return true;
    }

   private:
    std::vector<AlgebraicReal> jumps_;  // c = 2 cos(alpha), descending
    std::vector<int> mult_;
    std::vector<int> values_;
};

struct DKSet {
    std::vector<AlgebraicReal> elements;  // descending in c, closed under negation
    std::vector<int> multiplicities;
    bool empty() const { return elements.empty(); }
};

// substitute x = c^2 - 2 into g
inline ZPoly substitute_c2_minus_2(const ZPoly& g) {
    ZPoly x2m2({std::vector<Int>{Int(-2), Int(0), Int(1)}});
    ZPoly acc;
    for (long i = g.degree(); i >= 0; --i) {
        acc = acc * x2m2;
        acc = acc + ZPoly::constant(g[i]);
    }
    return acc;
}

// D_K from the Alexander polynomial: c = +-sqrt(2 + x) over Chebyshev roots x
inline DKSet d_k(const Laurent& delta) {
    Laurent q = normalize_symmetric(delta);
    ZPoly g = squarefree_part(chebyshev_form(q));
    auto xroots = sturm_isolate(chebyshev_form(q), Rat(-2), Rat(2));
    ZPoly h = substitute_c2_minus_2(g).primitive();
    DKSet out;
    std::vector<std::pair<AlgebraicReal, int>> pos;
    for (auto& xr : xroots) {
        AlgebraicReal x = xr.root;
        // the root is strictly inside (-2,2); shrink the interval to match so
        // the sqrt image stays strictly inside (0,2)
        while (!(Rat(-2) < x.lo() && x.hi() < Rat(2))) x.refine();
        auto sl = rat_sqrt_bounds(x.lo() + 2);
        auto sh = rat_sqrt_bounds(x.hi() + 2);
        pos.emplace_back(AlgebraicReal(h, sl.first, sh.second), xr.multiplicity);
    }
    std::sort(pos.begin(), pos.end(), [](auto& a, auto& b) { return cmp(a.first, b.first) > 0; });
    for (auto& [c, m] : pos) {
        out.elements.push_back(c);
        out.multiplicities.push_back(m);
    }
    for (size_t i = pos.size(); i-- > 0;) {
        out.elements.push_back(pos[i].first.negated());
        out.multiplicities.push_back(pos[i].second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// interval LDL^* signature of H(omega) = (1-omega)V + (1-conj omega)V^T at
// omega = e^{2 i alpha}, c = 2 cos alpha rational, with precision escalation
// ---------------------------------------------------------------------------
namespace detail {

struct CI {
    DyI re, im;
};
inline CI ci_sub(const CI& a, const CI& b, long p) { return {di_sub(a.re, b.re, p), di_sub(a.im, b.im, p)}; }
inline CI ci_mul(const CI& a, const CI& b, long p) {
    return {di_sub(di_mul(a.re, b.re, p), di_mul(a.im, b.im, p), p), di_add(di_mul(a.re, b.im, p), di_mul(a.im, b.re, p), p)};
}
inline CI ci_conj(const CI& a) { return {a.re, -a.im}; }
inline DyI ci_norm2(const CI& a, long p) { return di_add(di_mul(a.re, a.re, p), di_mul(a.im, a.im, p), p); }
inline CI ci_div_real(const CI& a, const DyI& d, long p) { return {di_div(a.re, d, p), di_div(a.im, d, p)}; }

inline int hermitian_signature_once(const IMat& V, const Rat& c, long prec) {
    int n = V.n;
    Rat r = (c * c - 2) / 2;  // cos 2alpha
    DyI one_minus_r = DyI::from_rat(1 - r, prec);
    Rat s2 = 1 - r * r;
    DyI s = di_sqrt(DyI::from_rat(s2, prec), prec);  // |sin 2alpha|
    if (sgn(c) < 0) s = -s;                          // alpha > pi/2  =>  sin 2alpha < 0
    if (sgn(c) == 0) s = DyI(Dyadic(0));             // omega = -1 exactly
    std::vector<std::vector<CI>> H(n, std::vector<CI>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat sym = Rat(V.at(i, j) + V.at(j, i));
            Rat skew = Rat(V.at(j, i) - V.at(i, j));
            H[i][j].re = di_mul(one_minus_r, DyI::from_rat(sym, prec), prec);
            H[i][j].im = di_mul(s, DyI::from_rat(skew, prec), prec);
        }
    std::vector<int> live(n);
    std::iota(live.begin(), live.end(), 0);
    int sig = 0;
    while (!live.empty()) {
        // best sign-definite diagonal pivot
        int piv = -1;
        double best = 0;
        for (int i : live) {
            if (H[i][i].re.sign() == 0) continue;
            double m = std::abs(H[i][i].re.to_d());
            if (piv < 0 || m > best) {
                piv = i;
                best = m;
            }
        }
        if (piv >= 0) {
            DyI d = H[piv][piv].re;
            sig += d.sign();
            std::vector<int> rest;
            for (int i : live)
                if (i != piv) rest.push_back(i);
            for (int i : rest)
                for (int j : rest) {
                    CI prod = ci_mul(H[i][piv], ci_conj(H[j][piv]), prec);
                    H[i][j] = ci_sub(H[i][j], ci_div_real(prod, d, prec), prec);
                }
            live = std::move(rest);
            continue;
        }
        // all remaining diagonal entries straddle zero: certified-indefinite
        // 2x2 pivot (contributes +1 -1)
        int a = -1, b = -1;
        for (size_t ii = 0; ii < live.size() && a < 0; ++ii)
            for (size_t jj = ii + 1; jj < live.size(); ++jj) {
                int i = live[ii], j = live[jj];
                DyI det = di_sub(di_mul(H[i][i].re, H[j][j].re, prec), ci_norm2(H[i][j], prec), prec);
                if (det.sign() < 0) {
                    a = i;
                    b = j;
                    break;
                }
            }
        if (a < 0) throw precision_exhausted("hermitian signature: no certified pivot");
        DyI det = di_sub(di_mul(H[a][a].re, H[b][b].re, prec), ci_norm2(H[a][b], prec), prec);
        std::vector<int> rest;
        for (int i : live)
            if (i != a && i != b) rest.push_back(i);
        // Schur complement against the 2x2 block B = [[daa, h],[conj h, dbb]]:
        // H[i][j] -= [H[i][a], H[i][b]] B^{-1} [H[a][j]; H[b][j]]
        for (int i : rest)
            for (int j : rest) {
                CI xa = H[i][a], xb = H[i][b];
                CI haj = ci_conj(H[j][a]), hbj = ci_conj(H[j][b]);
                CI t1 = ci_sub(ci_mul(xa, CI{H[b][b].re, DyI(Dyadic(0))}, prec), ci_mul(xb, ci_conj(H[a][b]), prec), prec);
                CI t2 = ci_sub(ci_mul(xb, CI{H[a][a].re, DyI(Dyadic(0))}, prec), ci_mul(xa, H[a][b], prec), prec);
                CI p1 = ci_mul(t1, haj, prec), p2 = ci_mul(t2, hbj, prec);
                CI total = {di_add(p1.re, p2.re, prec), di_add(p1.im, p2.im, prec)};
                H[i][j] = ci_sub(H[i][j], ci_div_real(total, det, prec), prec);
            }
        live = std::move(rest);
    }
    return sig;
}

}  // namespace detail

// signature of H(omega) at the rational sample c = 2 cos alpha, with
// precision doubling up to the configured cap
inline int hermitian_signature(const IMat& V, const Rat& c) {
    long cap = precision_cap();
    for (long prec = 64; prec <= cap; prec *= 2) {
        try {
            return detail::hermitian_signature_once(V, c, prec);
        } catch (const precision_exhausted&) {
            continue;
        }
    }
    throw precision_exhausted("hermitian_signature: precision cap reached");
}

// rational sample points: one inside each open interval of the partition by
// jumps (given descending in c)
inline std::vector<Rat> interval_samples(std::vector<AlgebraicReal> jumps) {
    for (size_t i = 0; i + 1 < jumps.size(); ++i) {
        int guard = 0;
        while (!(jumps[i + 1].hi() < jumps[i].lo())) {
            jumps[i].refine();
            jumps[i + 1].refine();
            if (++guard > 100000) throw error("interval_samples: jumps not separable");
        }
    }
    std::vector<Rat> samples;
    for (size_t i = 0; i <= jumps.size(); ++i) {
        Rat hi = (i == 0) ? Rat(2) : jumps[i - 1].lo();
        Rat lo = (i == jumps.size()) ? Rat(-2) : jumps[i].hi();
        samples.push_back((lo + hi) / 2);
    }
    return samples;
}

// Levine-Tristram step function from a Seifert matrix
inline SignatureStep levine_tristram(const IMat& V) {
    if (V.n == 0) return SignatureStep();
    {
        IMat D(V.n);
        for (int i = 0; i < V.n; ++i)
            for (int j = 0; j < V.n; ++j) D.at(i, j) = V.at(i, j) - V.at(j, i);
        Int d = bareiss_det(D);
        if (d != 1 && d != -1) throw not_seifert("levine_tristram: det(V - V^T) != +-1");
    }
    Laurent delta = normalize_symmetric(seifert_alexander_raw(V));
    DKSet dk = d_k(delta);
    auto samples = interval_samples(dk.elements);
    std::vector<int> values;
    for (const Rat& c : samples) values.push_back(hermitian_signature(V, c));
    return SignatureStep(dk.elements, dk.multiplicities, std::move(values));
}

// ---------------------------------------------------------------------------
// Litherland's formula for torus knots
// ---------------------------------------------------------------------------

// p_m with p_m(2 cos theta) = 2 cos(m theta)
inline ZPoly cos_multiple_poly(long m) {
    ZPoly pm2 = ZPoly::constant(Int(2));
    ZPoly pm1 = ZPoly::monomial(Int(1), 1);
    if (m == 0) return pm2;
    ZPoly x = pm1;
    for (long k = 2; k <= m; ++k) {
        ZPoly next = x * pm1 - pm2;
        pm2 = std::move(pm1);
        pm1 = std::move(next);
    }
    return pm1;
}

// the algebraic numbers 2 cos(n pi / m) for n = 1..m-1, indexed by n
inline std::vector<AlgebraicReal> cos_lattice(long m) {
    ZPoly even = squarefree_part(cos_multiple_poly(m) - ZPoly::constant(Int(2)));
    ZPoly odd = squarefree_part(cos_multiple_poly(m) + ZPoly::constant(Int(2)));
    auto even_roots = sturm_isolate(even, Rat(-2), Rat(2));  // 2cos(2j pi/m), j = 1..
    auto odd_roots = sturm_isolate(odd, Rat(-2), Rat(2));    // 2cos((2j+1) pi/m), j = 0..
    std::vector<AlgebraicReal> by_n(m);                      // index n in 1..m-1
    // roots are sorted ascending in c = descending in the angle index
    for (size_t k = 0; k < even_roots.size(); ++k) {
        long j = static_cast<long>(even_roots.size() - k);  // largest c <-> j = 1
        long n = 2 * j;
        if (n < m) by_n[n] = even_roots[k].root;
    }
    for (size_t k = 0; k < odd_roots.size(); ++k) {
        long j = static_cast<long>(odd_roots.size() - 1 - k);
        long n = 2 * j + 1;
        if (n < m) by_n[n] = odd_roots[k].root;
    }
    return by_n;
}

inline bool in_semigroup(long n, long p, long q) {
    for (long a = 0; a * p <= n; ++a)
        if ((n - a * p) % q == 0) return true;
    return false;
}

// jumps at alpha = n pi / pq with sign from Litherland's formula: +2 exactly
// when n is representable in the semigroup generated by p and q
inline SignatureStep litherland_signature(long p, long q) {
    if (!(2 <= p && p < q && std::gcd(p, q) == 1)) throw invalid_descriptor("litherland: bad torus parameters");
    long m = p * q;
    auto lattice = cos_lattice(m);
    std::vector<AlgebraicReal> jumps;
    std::vector<int> mult, values{0};
    int acc = 0;
    for (long n = 1; n < m; ++n) {
        if (n % p == 0 || n % q == 0) continue;
        jumps.push_back(lattice[n]);  // descending in c as n ascends? no: ascending alpha = descending c; lattice[n] has c = 2cos(n pi/m), decreasing in n -- good
        mult.push_back(1);
        acc += in_semigroup(n, p, q) ? 2 : -2;
        values.push_back(acc);
    }
    return SignatureStep(std::move(jumps), std::move(mult), std::move(values));
}

// ---------------------------------------------------------------------------
// partition of [0, pi] by A_K and the width w_K
// ---------------------------------------------------------------------------

// alpha = arccos(c/2) enclosure for a refined jump
inline DyI alpha_enclosure(const AlgebraicReal& c0, long prec) {
    AlgebraicReal c = c0;
    Rat eps = Rat(1);
    for (long i = 0; i < prec / 2 + 8; ++i) eps /= 2;
    c.refine_below(eps);
    DyI ci = DyI::from_rats(c.lo(), c.hi(), prec);
    DyI half = di_scale2(ci, -1);
    DyI s = di_sqrt(di_sub(DyI(Dyadic(1)), di_mul(half, half, prec), prec), prec);
    return di_atan2(s, half, prec);
}

struct PartitionWidth {
    std::vector<AlgebraicReal> partition;  // the jumps, ascending alpha (descending c)
    Rat width_lower_bound;                 // certified w_K lower bound
    std::vector<std::pair<double, double>> alpha_intervals;
};

inline PartitionWidth partition_and_width(const SignatureStep& sf) {
    PartitionWidth out;
    out.partition = sf.jumps();
    if (out.partition.empty()) {
        DyI pi = pi_enclosure(96);
        out.width_lower_bound = pi.lo.to_rat();
        return out;
    }
    long cap = precision_cap();
    for (long prec = 96; prec <= cap; prec *= 2) {
        std::vector<DyI> alphas;
        for (auto& c : out.partition) alphas.push_back(alpha_enclosure(c, prec));
        DyI pi = pi_enclosure(prec);
        std::vector<DyI> gaps;
        gaps.push_back(alphas.front());
        for (size_t i = 0; i + 1 < alphas.size(); ++i) gaps.push_back(di_sub(alphas[i + 1], alphas[i], prec));
        gaps.push_back(di_sub(pi, alphas.back(), prec));
        Dyadic min_lo = gaps[0].lo, min_hi = gaps[0].hi;
        for (auto& g : gaps) {
            if (g.lo < min_lo) min_lo = g.lo;
            if (g.hi < min_hi) min_hi = g.hi;
        }
        if (min_lo.sign() > 0) {
            // relative precision 1e-6 on the minimum gap
            Dyadic spread = dy_sub(min_hi, min_lo);
            DyI rel = di_div(DyI(spread), DyI(min_lo), 64);
            if (rel.hi < Dyadic(Int(1), -20)) {
                out.width_lower_bound = min_lo.to_rat();
                for (auto& a : alphas) out.alpha_intervals.emplace_back(a.lo.to_d(), a.hi.to_d());
                return out;
            }
        }
    }
    throw precision_exhausted("partition_and_width: cap reached");
}

// ---------------------------------------------------------------------------
// assumed-unimodal profile for alternating-type knots given only Delta: all
// first-half jumps share one sign (negative unless mirrored). Valid for the
// fixtures this project computes h for; rejected when roots are not simple.
// ---------------------------------------------------------------------------
inline SignatureStep sigma_step_unimodal(const Laurent& delta, bool mirrored) {
    DKSet dk = d_k(delta);
    for (int m : dk.multiplicities)
        if (m != 1) throw unsupported("unimodal profile needs simple unit-circle roots");
    size_t k = dk.elements.size();  // even: both signs
    std::vector<int> values{0};
    int step = mirrored ? 2 : -2;
    size_t half = k / 2;
    for (size_t i = 1; i <= half; ++i) values.push_back(static_cast<int>(i) * step);
    for (size_t i = half; i-- > 0;) values.push_back(static_cast<int>(i) * step);
    return SignatureStep(dk.elements, dk.multiplicities, std::move(values));
}

// dispatch: the signature step function of a descriptor, mirror-aware
inline SignatureStep sigma_step(const KnotDescriptor& k) {
    switch (k.kind) {
        case KnotKind::Torus: {
            SignatureStep s = litherland_signature(k.p, k.q);
            return k.mirrored() ? s.negated() : s;
        }
        case KnotKind::TwoBridge:
        case KnotKind::Seifert:
            return levine_tristram(seifert_matrix(k));
        case KnotKind::Raw:
            if (k.delta == Laurent::constant(Rat(1))) return SignatureStep();
            if (k.flags.count("alternating") || k.flags.count("montesinos"))
                return sigma_step_unimodal(k.delta, k.mirrored());
            throw no_signature("no signature route for a raw polynomial without class flags");
    }
    throw no_signature("unreachable");
}

}  // namespace krl
