#include "jetvar/errors.hpp"
#include "jetvar/polynomial.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cassert>

// Multivariate GCD over Q via the primitive subresultant PRS over Z:
// clear denominators, split off integer and polynomial contents recursively,
// run the subresultant remainder sequence in the top variable.

namespace jetvar {

namespace {

Integer integer_content(const Polynomial& p) {
    Integer g = 0;
    for (const auto& [m, c] : p.terms()) {
        assert(den(c) == 1);
        g = boost::multiprecision::gcd(g, num(c));
        if (g == 1) break;
    }
    return g;
}

/// Multiply by the lcm of coefficient denominators: integer coefficients.
Polynomial clear_denominators(const Polynomial& p) {
    Integer l = 1;
    for (const auto& [m, c] : p.terms()) l = boost::multiprecision::lcm(l, den(c));
    return p * Rational(l);
}

/// Integer-primitive with positive leading coefficient.
Polynomial canonical_z(const Polynomial& p) {
    if (p.is_zero()) return p;
    Polynomial q = clear_denominators(p);
    Integer cont = integer_content(q);
    if (q.leading_coefficient() < 0) cont = -cont;
    return q * (Rational(1) / Rational(cont));
}

Polynomial gcd_z(const Polynomial& a, const Polynomial& b);

VarKey top_var(const Polynomial& p) {
    return p.leading_monomial().factors().back().first;
}

/// gcd of all v-coefficients (recursive multivariate gcd).
Polynomial content_in(const Polynomial& p, const VarKey& v) {
    Polynomial g;
    for (const auto& [e, coeff] : p.univariate_view(v)) {
        g = gcd_z(g, coeff);
        if (g.is_constant() && !g.is_zero()) return Polynomial::one();
    }
    return g;
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto q = poly_divide_exact(a, b);
    if (!q) throw InternalInconsistency("polynomial gcd: inexact division");
    return *q;
}

struct UniPoly {
    // coefficients by v-degree, absent = zero
    std::map<int, Polynomial> coeffs;

    int deg() const { return coeffs.empty() ? -1 : coeffs.rbegin()->first; }
    bool is_zero() const { return coeffs.empty(); }
    const Polynomial& lc() const { return coeffs.rbegin()->second; }

    void set(int e, Polynomial p) {
        if (!p.is_zero()) coeffs[e] = std::move(p);
    }
};

UniPoly to_uni(const Polynomial& p, const VarKey& v) {
    UniPoly u;
    u.coeffs = p.univariate_view(v);
    return u;
}

Polynomial from_uni(const UniPoly& u, const VarKey& v) {
    return Polynomial::from_univariate(v, u.coeffs);
}

UniPoly uni_mul_poly(const UniPoly& a, const Polynomial& p) {
    UniPoly out;
    for (const auto& [e, c] : a.coeffs) out.set(e, c * p);
    return out;
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
    UniPoly out = a;
    for (const auto& [e, c] : b.coeffs) {
        auto it = out.coeffs.find(e);
        if (it == out.coeffs.end()) {
            out.coeffs[e] = -c;
        } else {
            it->second -= c;
            if (it->second.is_zero()) out.coeffs.erase(it);
        }
    }
    return out;
}

/// Pseudo-remainder of a by b in the shared variable: lc(b)^(da-db+1) * a mod b.
UniPoly pseudo_rem(UniPoly a, const UniPoly& b) {
    int db = b.deg();
    const Polynomial& lb = b.lc();
    int steps_left = a.deg() - db + 1;
    while (!a.is_zero() && a.deg() >= db) {
        int shift = a.deg() - db;
        Polynomial la = a.lc();
        UniPoly shifted;
        for (const auto& [e, c] : b.coeffs) shifted.set(e + shift, c * la);
        a = uni_sub(uni_mul_poly(a, lb), shifted);
        --steps_left;
    }
    // pad to the exact pseudo-remainder power so subresultant divisions stay exact
    for (; steps_left > 0; --steps_left) a = uni_mul_poly(a, lb);
    return a;
}

UniPoly uni_div_exact(const UniPoly& a, const Polynomial& p) {
    UniPoly out;
    for (const auto& [e, c] : a.coeffs) out.set(e, exact_div(c, p));
    return out;
}

/// Subresultant PRS; inputs primitive in v with deg_v >= 1 each.
Polynomial subresultant_gcd(const Polynomial& pa, const Polynomial& pb, const VarKey& v) {
    UniPoly A = to_uni(pa, v), B = to_uni(pb, v);
    if (A.deg() < B.deg()) std::swap(A, B);
    Polynomial g = Polynomial::one(), h = Polynomial::one();
    while (true) {
        int delta = A.deg() - B.deg();
        UniPoly R = pseudo_rem(A, B);
        if (R.is_zero()) break;
        if (R.deg() == 0) return Polynomial::one(); // v-free divisor of primitives
        A = std::move(B);
        Polynomial divisor = g * h.pow(delta);
        B = uni_div_exact(R, divisor);
        g = A.lc();
        if (delta > 0) {
            Polynomial gd = g.pow(delta);
            h = delta == 1 ? gd : exact_div(gd, h.pow(delta - 1));
        }
    }
    Polynomial result = from_uni(B, v);
    return exact_div(result, content_in(result, v)); // primitive part in v
}

/// gcd over Z[x...]; result canonical_z. Inputs integer-coefficient.
Polynomial gcd_z(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return canonical_z(b);
    if (b.is_zero()) return canonical_z(a);
    if (a == b) return canonical_z(a);
    if (a.is_constant() || b.is_constant()) {
        Integer g = boost::multiprecision::gcd(integer_content(a), integer_content(b));
        return Polynomial(Rational(g));
    }
    // single-monomial fast path
    if (a.term_count() == 1 && b.term_count() == 1) {
        const auto& [ma, ca] = *a.terms().begin();
        const auto& [mb, cb] = *b.terms().begin();
        Monomial common;
        for (const auto& [var, e] : ma.factors()) {
            int eb = mb.degree_in(var);
            if (eb > 0) common = common * Monomial(var, std::min(e, eb));
        }
        Integer g = boost::multiprecision::gcd(num(ca) < 0 ? Integer(-num(ca)) : num(ca),
                                               num(cb) < 0 ? Integer(-num(cb)) : num(cb));
        return Polynomial(common, Rational(g));
    }

    VarKey va = top_var(a), vb = top_var(b);
    VarKey v = std::max(va, vb);
    bool a_has = a.depends_on(v), b_has = b.depends_on(v);
    if (a_has && !b_has) return gcd_z(content_in(a, v), b);
    if (!a_has && b_has) return gcd_z(a, content_in(b, v));

    Polynomial ca = content_in(a, v), cb = content_in(b, v);
    Polynomial pa = exact_div(a, ca), pb = exact_div(b, cb);
    Polynomial c = gcd_z(ca, cb);
    Polynomial gp = (pa == pb) ? pa : subresultant_gcd(pa, pb, v);
    return canonical_z(c * gp);
}

} // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial az = canonical_z(a), bz = canonical_z(b);
    return gcd_z(az, bz);
}

} // namespace jetvar
