#pragma once

#include "jetvar/bundle.hpp"
#include "jetvar/polynomial.hpp"
#include "jetvar/rational.hpp"

#include <map>
#include <set>
#include <string>

namespace jetvar {

/// Exact symbolic scalar on a finite-order jet chart: a canonical rational
/// function over Q in base coordinates, jet coordinates and atoms. Canonical
/// form: gcd(num, den) = 1 and den monic in the canonical monomial order, so
/// equality is structural and is_zero() is decidable on this fragment.
/// Immutable value type; atoms are transcendental generators (no algebraic
/// relations between atoms and coordinates are ever used).
class Expr {
public:
    Expr() = default; // zero, bundle-less

    static Expr from_rational(Rational c);
    static Expr make(const BundleSpec* spec, Polynomial num, Polynomial den);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational as_rational() const; // requires is_constant()

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_polynomial() const { return den_.is_constant(); }
    const BundleSpec* bundle() const { return spec_; }

    Expr operator-() const;
    Expr operator+(const Expr&) const;
    Expr operator-(const Expr&) const;
    Expr operator*(const Expr&) const;
    Expr operator/(const Expr&) const; // throws DivisionByZero
    Expr& operator+=(const Expr& e) { return *this = *this + e; }
    Expr& operator-=(const Expr& e) { return *this = *this - e; }
    Expr& operator*=(const Expr& e) { return *this = *this * e; }
    Expr pow(int e) const; // negative e inverts

    bool operator==(const Expr& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }

    /// Partial derivative with the registered atom rules chained in:
    /// d e/d v treating coordinates and atoms as independent, plus
    /// (d e/d A) * rule(A, v) for every atom A.
    Expr partial(const VarKey& v) const;
    /// Formal partial: every variable (atoms included) independent.
    Expr partial_formal(const VarKey& v) const;

    std::set<VarKey> variables() const;
    bool depends_on(const VarKey& v) const;
    /// Max |L| over jet variables, counting atoms at their dependency order.
    int jet_order() const;
    /// True when only base coordinates occur (no jets, no atoms).
    bool base_only() const;

    /// Exact evaluation; atoms must be given values like any variable.
    Rational eval(const std::map<VarKey, Rational>& point) const;

    /// Canonical rendering; parses back to the same value.
    std::string str() const;

private:
    friend class BundleSpec;
    void normalize();
    static const BundleSpec* unify(const Expr& a, const Expr& b);

    const BundleSpec* spec_ = nullptr;
    Polynomial num_;
    Polynomial den_ = Polynomial::one();
};

inline Expr operator*(const Rational& c, const Expr& e) {
    return Expr::from_rational(c) * e;
}

} // namespace jetvar
