#pragma once

// Exact univariate polynomial and Laurent polynomial arithmetic over Q,
// with the palindromic normalization and Chebyshev-type substitution used
// for locating Alexander-polynomial roots on the unit circle.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "krl/rational.hpp"

namespace krl {

struct not_reciprocal : error {
    using error::error;
};
struct not_palindromic : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// Dense polynomial over Z (ascending coefficients, no trailing zeros).
// ---------------------------------------------------------------------------
class ZPoly {
   public:
    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static ZPoly constant(Int v) { return ZPoly(std::vector<Int>{std::move(v)}); }
    static ZPoly monomial(const Int& v, size_t deg) {
        std::vector<Int> c(deg + 1, Int(0));
        c[deg] = v;
        return ZPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Int& operator[](size_t i) const {
        static const Int zero(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& leading() const { return c_.back(); }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
        return ZPoly(std::move(r));
    }
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
        return ZPoly(std::move(r));
    }
    ZPoly operator-() const {
        std::vector<Int> r(c_);
        for (auto& x : r) x = -x;
        return ZPoly(std::move(r));
    }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return ZPoly();
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return ZPoly(std::move(r));
    }
    friend ZPoly operator*(const ZPoly& a, const Int& s) {
        std::vector<Int> r(a.c_);
        for (auto& x : r) x *= s;
        return ZPoly(std::move(r));
    }
    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

    ZPoly derivative() const {
        if (c_.size() <= 1) return ZPoly();
        std::vector<Int> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
        return ZPoly(std::move(r));
    }

    Int content() const {
        Int g(0);
        for (const auto& x : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }
    // primitive part with positive leading coefficient
    ZPoly primitive() const {
        if (is_zero()) return ZPoly();
        Int g = content();
        if (sgn(leading()) < 0) g = -g;
        std::vector<Int> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
        return ZPoly(std::move(r));
    }
    // content division that keeps the sign (needed wherever signs carry data)
    ZPoly pos_primitive() const {
        if (is_zero()) return ZPoly();
        Int g = content();
        std::vector<Int> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
        return ZPoly(std::move(r));
    }

    // exact sign of p(a/b) for b > 0: sign of sum c_i a^i b^(d-i)
    int sign_at(const Rat& x) const {
        if (is_zero()) return 0;
        const Int &a = x.get_num(), &b = x.get_den();
        Int acc(0), apow(1);
        std::vector<Int> bpow(c_.size());
        bpow[c_.size() - 1] = 1;
        for (size_t i = c_.size() - 1; i > 0; --i) bpow[i - 1] = bpow[i] * b;
        for (size_t i = 0; i < c_.size(); ++i) {
            acc += c_[i] * apow * bpow[i];
            apow *= a;
        }
        return sgn(acc);
    }
    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = c_.size(); i > 0; --i) acc = acc * x + Rat(c_[i - 1]);
        return acc;
    }
    int sign_at_pos_inf() const { return is_zero() ? 0 : sgn(leading()); }
    int sign_at_neg_inf() const {
        if (is_zero()) return 0;
        return (degree() % 2 == 0) ? sgn(leading()) : -sgn(leading());
    }

    // p(x) -> p(-x)
    ZPoly reflect() const {
        std::vector<Int> r(c_);
        for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return ZPoly(std::move(r));
    }

    std::string str(const std::string& var = "x") const;

   private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// pseudo-remainder of a by b (deg a >= deg b >= 0)
inline ZPoly prem(const ZPoly& a, const ZPoly& b) {
    long da = a.degree(), db = b.degree();
    if (db < 0) throw error("prem by zero");
    std::vector<Int> r(a.coeffs());
    const Int& lb = b.leading();
    for (long k = da; k >= db; --k) {
        Int lead = r[k];
        for (long i = 0; i <= k; ++i) r[i] *= lb;
        if (sgn(lead) != 0)
            for (long i = 0; i <= db; ++i) r[k - db + i] -= lead * b[i];
    }
    r.resize(db > 0 ? db : 0);
    return ZPoly(std::move(r));
}

// polynomial gcd over Q, returned as primitive integer polynomial
inline ZPoly zgcd(ZPoly a, ZPoly b) {
    a = a.primitive();
    b = b.primitive();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        ZPoly r = prem(a, b).primitive();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive();
}

inline ZPoly squarefree_part(const ZPoly& p) {
    if (p.degree() <= 0) return p.primitive();
    ZPoly g = zgcd(p, p.derivative());
    if (g.degree() <= 0) return p.primitive();
    // exact division p / g over Q, done on primitive parts
    ZPoly a = p.primitive();
    std::vector<Rat> q(a.degree() - g.degree() + 1, Rat(0));
    std::vector<Rat> rem(a.coeffs().size());
    for (size_t i = 0; i < rem.size(); ++i) rem[i] = Rat(a[i]);
    Rat lg{g.leading()};
    for (long k = a.degree() - g.degree(); k >= 0; --k) {
        Rat coef = rem[k + g.degree()] / lg;
        q[k] = coef;
        for (long i = 0; i <= g.degree(); ++i) rem[k + i] -= coef * Rat(g[i]);
    }
    // clear denominators
    Int den(1);
    for (auto& x : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> zi(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        Rat v = q[i] * Rat(den);
        zi[i] = v.get_num();
    }
    return ZPoly(std::move(zi)).primitive();
}

// Yun squarefree decomposition: returns list of (factor, multiplicity).
// Internally runs over Q so the z = y - w' recurrence keeps consistent scale.
inline std::vector<std::pair<ZPoly, int>> yun_decomposition(const ZPoly& p) {
    using QP = std::vector<Rat>;
    auto trim = [](QP& v) {
        while (!v.empty() && sgn(v.back()) == 0) v.pop_back();
    };
    auto from_z = [](const ZPoly& z) {
        QP v(z.coeffs().size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = Rat(z[i]);
        return v;
    };
    auto to_z = [](const QP& v) {
        Int d(1);
        for (auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<Int> zi(v.size());
        for (size_t i = 0; i < v.size(); ++i) zi[i] = Rat(v[i] * Rat(d)).get_num();
        return ZPoly(std::move(zi));
    };
    auto deriv = [&](const QP& v) {
        QP r;
        for (size_t i = 1; i < v.size(); ++i) r.push_back(v[i] * Rat(static_cast<long>(i)));
        trim(r);
        return r;
    };
    auto sub = [&](const QP& a, const QP& b) {
        QP r(std::max(a.size(), b.size()), Rat(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = (i < a.size() ? a[i] : Rat(0)) - (i < b.size() ? b[i] : Rat(0));
        trim(r);
        return r;
    };
    auto divexact = [&](const QP& num, const QP& den) {
        QP rem = num, q(num.size() - den.size() + 1, Rat(0));
        const Rat& lg = den.back();
        for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
            Rat coef = rem[k + den.size() - 1] / lg;
            q[k] = coef;
            for (size_t i = 0; i < den.size(); ++i) rem[k + i] -= coef * den[i];
        }
        return q;
    };

    std::vector<std::pair<ZPoly, int>> out;
    if (p.degree() <= 0) return out;
    ZPoly g = zgcd(p, p.derivative());
    if (g.degree() == 0) {
        out.emplace_back(p.primitive(), 1);
        return out;
    }
    QP a = from_z(p.primitive()), gq = from_z(g);
    QP w = divexact(a, gq);
    QP y = divexact(deriv(a), gq);
    int mult = 1;
    while (true) {
        QP z = sub(y, deriv(w));
        if (z.empty()) {
            if (w.size() > 1) out.emplace_back(to_z(w).primitive(), mult);
            break;
        }
        ZPoly f = zgcd(to_z(w), to_z(z));
        if (f.degree() > 0) out.emplace_back(f.primitive(), mult);
        QP fq = from_z(f);
        w = divexact(w, fq);
        y = divexact(z, fq);
        ++mult;
        if (mult > p.degree() + 1) throw error("yun_decomposition: runaway");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Laurent polynomial over Q: finite map exponent -> nonzero coefficient.
// ---------------------------------------------------------------------------
class Laurent {
   public:
    Laurent() = default;
    static Laurent constant(const Rat& v) {
        Laurent p;
        p.set(0, v);
        return p;
    }
    static Laurent term(const Rat& v, long e) {
        Laurent p;
        p.set(e, v);
        return p;
    }

    void set(long e, const Rat& v) {
        if (sgn(v) == 0)
            c_.erase(e);
        else
            c_[e] = v;
    }
    void add(long e, const Rat& v) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (sgn(v) != 0) c_[e] = v;
        } else {
            it->second += v;
            if (sgn(it->second) == 0) c_.erase(it);
        }
    }
    Rat coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }
    bool is_zero() const { return c_.empty(); }
    long min_exp() const { return c_.begin()->first; }
    long max_exp() const { return c_.rbegin()->first; }
    long span() const { return is_zero() ? 0 : max_exp() - min_exp(); }
    const std::map<long, Rat>& terms() const { return c_; }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (auto& [e, v] : b.c_) r.add(e, v);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (auto& [e, v] : b.c_) r.add(e, -v);
        return r;
    }
    Laurent operator-() const {
        Laurent r;
        for (auto& [e, v] : c_) r.c_[e] = -v;
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (auto& [ea, va] : a.c_)
            for (auto& [eb, vb] : b.c_) r.add(ea + eb, va * vb);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Rat& s) {
        Laurent r;
        if (sgn(s) != 0)
            for (auto& [e, v] : a.c_) r.c_[e] = v * s;
        return r;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }

    Laurent shifted(long k) const {
        Laurent r;
        for (auto& [e, v] : c_) r.c_[e + k] = v;
        return r;
    }
    // t -> 1/t
    Laurent inverted() const {
        Laurent r;
        for (auto& [e, v] : c_) r.c_[-e] = v;
        return r;
    }
    bool is_palindromic() const { return *this == inverted(); }

    Rat eval(const Rat& x) const {
        if (sgn(x) == 0) throw error("Laurent eval at 0");
        Rat acc(0);
        for (auto& [e, v] : c_) acc += v * pow_rat(x, e);
        return acc;
    }
    Rat eval_one() const {
        Rat acc(0);
        for (auto& [e, v] : c_) acc += v;
        return acc;
    }

    // ordinary polynomial p with this == t^min_exp * p(t); integer primitive
    // scaling is NOT applied: coefficients stay rational.
    std::vector<Rat> ordinary_coeffs() const {
        std::vector<Rat> out;
        if (is_zero()) return out;
        out.assign(span() + 1, Rat(0));
        long lo = min_exp();
        for (auto& [e, v] : c_) out[e - lo] = v;
        return out;
    }

    // exact division; throws if remainder nonzero
    friend Laurent div_exact(const Laurent& a, const Laurent& b) {
        if (b.is_zero()) throw error("Laurent division by zero");
        if (a.is_zero()) return Laurent();
        Laurent rem = a, q;
        long db = b.max_exp();
        const Rat& lb = b.c_.at(db);
        long guard = a.span() + 2;
        while (!rem.is_zero()) {
            if (--guard < 0) throw error("Laurent division not exact");
            long e = rem.max_exp() - db;
            Rat coef = rem.coeff(rem.max_exp()) / lb;
            q.add(e, coef);
            rem = rem - b.shifted(e) * coef;
        }
        return q;
    }

    std::string str(const std::string& var = "t") const;
    static Laurent parse(const std::string& text);

   private:
    std::map<long, Rat> c_;
};

inline std::string format_term(const Rat& v, long e, const std::string& var, bool first) {
    std::ostringstream os;
    Rat a = rat_abs(v);
    if (first)
        os << (sgn(v) < 0 ? "-" : "");
    else
        os << (sgn(v) < 0 ? "-" : "+");
    if (e == 0) {
        os << a.get_str();
    } else {
        if (a != 1) os << a.get_str() << "*";
        os << var;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

inline std::string Laurent::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        os << format_term(it->second, it->first, var, first);
        first = false;
    }
    return os.str();
}

inline std::string ZPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        if (sgn((*this)[i]) == 0) continue;
        os << format_term(Rat((*this)[i]), i, var, first);
        first = false;
    }
    return os.str();
}

// parses the sparse "coeff*t^exp" format, e.g. "8*t^6-21*t^5+27*t^4-...-21*t^-2+8"
inline Laurent Laurent::parse(const std::string& text) {
    Laurent out;
    std::string s;
    // normalize: strip spaces, map unicode minus to '-'
    for (size_t i = 0; i < text.size();) {
        if (text.compare(i, 3, "\xe2\x88\x92") == 0) {
            s += '-';
            i += 3;
        } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        } else {
            s += text[i++];
        }
    }
    if (s.empty()) throw parse_error("empty polynomial");
    if (s == "0") return out;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= s.size()) throw parse_error("dangling sign in polynomial");
        // coefficient (optional): digits possibly with /
        std::string num;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) num += s[i++];
        Rat coef = num.empty() ? Rat(1) : Rat(num);
        coef.canonicalize();
        long exp = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && (s[i] == 't' || s[i] == 'x' || s[i] == 'y' || s[i] == 'q')) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                bool neg = false;
                if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
                std::string es;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) es += s[i++];
                if (es.empty()) throw parse_error("missing exponent");
                exp = std::stol(es);
                if (neg) exp = -exp;
            }
        } else if (num.empty()) {
            throw parse_error("expected coefficient or variable at '" + s.substr(i) + "'");
        }
        out.add(exp, sign < 0 ? Rat(-coef) : coef);
    }
    return out;
}

// ---------------------------------------------------------------------------
// palindromic normalization: u * t^k * p with q(t) = q(1/t) and q(1) > 0
// ---------------------------------------------------------------------------
inline Laurent normalize_symmetric(const Laurent& p) {
    if (p.is_zero()) throw not_reciprocal("zero polynomial");
    long lo = p.min_exp(), hi = p.max_exp();
    if ((lo + hi) % 2 != 0) throw not_reciprocal("odd exponent span, no symmetric shift");
    Laurent q = p.shifted(-(lo + hi) / 2);
    if (!q.is_palindromic()) throw not_reciprocal("no unit multiple is palindromic");
    Rat at1 = q.eval_one();
    int s = sgn(at1);
    if (s == 0) s = sgn(q.coeff(q.max_exp()));  // q(1)=0: pin sign by leading coefficient
    return s < 0 ? -q : q;
}

// g with g(t + 1/t) = q(t) for palindromic q; roots of g in (-2,2) <-> unit
// circle root pairs of q.
inline ZPoly chebyshev_form(const Laurent& q) {
    if (q.is_zero()) return ZPoly();
    if (!q.is_palindromic()) throw not_palindromic("chebyshev_form needs q(t) == q(1/t)");
    long d = q.max_exp();
    // p_k(x) = t^k + t^-k under x = t + 1/t:  p_0 = 2, p_1 = x, p_k = x p_{k-1} - p_{k-2}
    std::vector<std::vector<Rat>> pk(d + 1);
    pk[0] = {Rat(2)};
    if (d >= 1) pk[1] = {Rat(0), Rat(1)};
    for (long k = 2; k <= d; ++k) {
        std::vector<Rat> r(k + 1, Rat(0));
        for (size_t i = 0; i < pk[k - 1].size(); ++i) r[i + 1] += pk[k - 1][i];
        for (size_t i = 0; i < pk[k - 2].size(); ++i) r[i] -= pk[k - 2][i];
        pk[k] = std::move(r);
    }
    std::vector<Rat> g(d + 1, Rat(0));
    g[0] = q.coeff(0);
    for (long k = 1; k <= d; ++k) {
        Rat a = q.coeff(k);
        if (sgn(a) == 0) continue;
        for (size_t i = 0; i < pk[k].size(); ++i) g[i] += a * pk[k][i];
    }
    // clear denominators -> primitive integer polynomial (same roots)
    Int den(1);
    for (auto& x : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> zi(g.size());
    for (size_t i = 0; i < g.size(); ++i) zi[i] = Rat(g[i] * Rat(den)).get_num();
    return ZPoly(std::move(zi));
}

// primitive integer version of the ordinary part of a Laurent polynomial
inline ZPoly to_zpoly(const Laurent& p) {
    if (p.is_zero()) return ZPoly();
    auto q = p.ordinary_coeffs();
    Int den(1);
    for (auto& x : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> zi(q.size());
    for (size_t i = 0; i < q.size(); ++i) zi[i] = Rat(q[i] * Rat(den)).get_num();
    return ZPoly(std::move(zi));
}

inline Laurent from_zpoly(const ZPoly& p, long shift = 0) {
    Laurent r;
    for (long i = 0; i <= p.degree(); ++i)
        if (sgn(p[i]) != 0) r.set(i + shift, Rat(p[i]));
    return r;
}

}  // namespace krl
