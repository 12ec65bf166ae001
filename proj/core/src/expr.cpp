#include "jetvar/expr.hpp"

#include "jetvar/errors.hpp"

#include <algorithm>

namespace jetvar {

Expr Expr::from_rational(Rational c) {
    Expr e;
    e.num_ = Polynomial(std::move(c));
    return e;
}

Expr Expr::make(const BundleSpec* spec, Polynomial num, Polynomial den) {
    Expr e;
    e.spec_ = spec;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    e.normalize();
    return e;
}

Rational Expr::as_rational() const {
    if (!is_constant()) throw Error("as_rational: expression is not constant");
    if (num_.is_zero()) return Rational(0);
    return num_.constant_term() / den_.constant_term();
}

void Expr::normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
        den_ = Polynomial::one();
        return;
    }
    if (!den_.is_constant()) {
        if (num_ == den_) {
            num_ = Polynomial::one();
            den_ = Polynomial::one();
        } else {
            Polynomial g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = *poly_divide_exact(num_, g);
                den_ = *poly_divide_exact(den_, g);
            }
        }
    }
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

const BundleSpec* Expr::unify(const Expr& a, const Expr& b) {
    if (a.spec_ && b.spec_ && a.spec_ != b.spec_)
        throw DimensionMismatch("expressions belong to different bundles");
    return a.spec_ ? a.spec_ : b.spec_;
}

Expr Expr::operator-() const {
    Expr out = *this;
    out.num_ = -out.num_;
    return out;
}

Expr Expr::operator+(const Expr& other) const {
    const BundleSpec* spec = unify(*this, other);
    if (is_polynomial() && other.is_polynomial()) {
        Expr out;
        out.spec_ = spec;
        out.num_ = num_ + other.num_;
        return out;
    }
    return make(spec, num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

Expr Expr::operator-(const Expr& other) const { return *this + (-other); }

Expr Expr::operator*(const Expr& other) const {
    const BundleSpec* spec = unify(*this, other);
    if (is_polynomial() && other.is_polynomial()) {
        Expr out;
        out.spec_ = spec;
        out.num_ = num_ * other.num_;
        return out;
    }
    // cross-reduce so the product needs no further gcd
    Polynomial n1 = num_, d2 = other.den_;
    Polynomial g1 = poly_gcd(n1, d2);
    if (!g1.is_constant()) {
        n1 = *poly_divide_exact(n1, g1);
        d2 = *poly_divide_exact(d2, g1);
    }
    Polynomial n2 = other.num_, d1 = den_;
    Polynomial g2 = poly_gcd(n2, d1);
    if (!g2.is_constant()) {
        n2 = *poly_divide_exact(n2, g2);
        d1 = *poly_divide_exact(d1, g2);
    }
    Expr out;
    out.spec_ = spec;
    out.num_ = n1 * n2;
    out.den_ = d1 * d2;
    if (out.num_.is_zero()) {
        out.den_ = Polynomial::one();
        return out;
    }
    Rational lc = out.den_.leading_coefficient();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        out.num_ = out.num_ * inv;
        out.den_ = out.den_ * inv;
    }
    return out;
}

Expr Expr::operator/(const Expr& other) const {
    if (other.is_zero()) throw DivisionByZero();
    Expr inv;
    inv.spec_ = other.spec_;
    inv.num_ = other.den_;
    inv.den_ = other.num_;
    Rational lc = inv.den_.leading_coefficient();
    if (lc != 1) {
        Rational s = Rational(1) / lc;
        inv.num_ = inv.num_ * s;
        inv.den_ = inv.den_ * s;
    }
    return *this * inv;
}

Expr Expr::pow(int e) const {
    if (e == 0) return from_rational(1);
    if (e < 0) return from_rational(1) / pow(-e);
    Expr out;
    out.spec_ = spec_;
    out.num_ = num_.pow(e);
    out.den_ = den_.pow(e);
    return out; // reduced inputs stay reduced under powers; den stays monic
}

Expr Expr::partial_formal(const VarKey& v) const {
    if (is_polynomial()) {
        // canonical polynomials have denominator exactly one
        Expr out;
        out.spec_ = spec_;
        out.num_ = num_.derivative(v);
        return out;
    }
    Polynomial dn = num_.derivative(v), dd = den_.derivative(v);
    if (dn.is_zero() && dd.is_zero()) return Expr{};
    return make(spec_, dn * den_ - num_ * dd, den_ * den_);
}

Expr Expr::partial(const VarKey& v) const {
    Expr out = partial_formal(v);
    if (!spec_ || spec_->atom_count() == 0 || v.is_atom()) return out;
    for (const VarKey& var : variables()) {
        if (!var.is_atom()) continue;
        const Expr& rule = spec_->atom_rule(var.id, v);
        if (rule.is_zero()) continue;
        Expr chain = partial_formal(var);
        if (!chain.is_zero()) out += chain * rule;
    }
    return out;
}

std::set<VarKey> Expr::variables() const {
    std::set<VarKey> vars;
    num_.collect_vars(vars);
    den_.collect_vars(vars);
    return vars;
}

bool Expr::depends_on(const VarKey& v) const {
    return num_.depends_on(v) || den_.depends_on(v);
}

int Expr::jet_order() const {
    int order = 0;
    for (const VarKey& v : variables()) {
        if (v.is_jet())
            order = std::max(order, v.jet.degree());
        else if (v.is_atom() && spec_)
            order = std::max(order, spec_->atom(v.id).jet_order);
    }
    return order;
}

bool Expr::base_only() const {
    for (const VarKey& v : variables())
        if (!v.is_base()) return false;
    return true;
}

Rational Expr::eval(const std::map<VarKey, Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0) throw DivisionByZero();
    return num_.eval(point) / d;
}

// ---------------------------------------------------------------------------
// canonical printer

namespace {

std::string monomial_str(const BundleSpec* spec, const Monomial& m) {
    std::string out;
    bool first = true;
    for (const auto& [v, e] : m.factors()) {
        if (!first) out += "*";
        first = false;
        out += spec ? spec->var_name(v) : std::string("?");
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string poly_str(const BundleSpec* spec, const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    // descending canonical order: leading term first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (m.is_unit())
            out += rational_str(mag);
        else if (mag == 1)
            out += monomial_str(spec, m);
        else
            out += rational_str(mag) + "*" + monomial_str(spec, m);
    }
    return out;
}

} // namespace

std::string Expr::str() const {
    if (is_polynomial()) return poly_str(spec_, num_);
    return "(" + poly_str(spec_, num_) + ")/(" + poly_str(spec_, den_) + ")";
}

} // namespace jetvar
