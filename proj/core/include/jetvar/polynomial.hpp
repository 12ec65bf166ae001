#pragma once

#include "jetvar/bundle.hpp"
#include "jetvar/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace jetvar {

/// Power product of variables, factors sorted by VarKey, exponents > 0.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(const VarKey& v, int e = 1);

    bool is_unit() const { return factors_.empty(); }
    int total_degree() const;
    int degree_in(const VarKey& v) const;
    const std::vector<std::pair<VarKey, int>>& factors() const { return factors_; }

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    /// other / this; factors must divide.
    Monomial divide_into(const Monomial& other) const;

    bool operator==(const Monomial&) const = default;

    /// Canonical monomial order: lexicographic with the highest variable most
    /// significant. The unit monomial is least.
    std::strong_ordering operator<=>(const Monomial& other) const;

private:
    std::vector<std::pair<VarKey, int>> factors_;
};

/// Sparse multivariate polynomial over Q, canonical by construction: terms
/// keyed by Monomial in canonical order, zero coefficients never stored.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Rational c);
    explicit Polynomial(const VarKey& v);
    Polynomial(Monomial m, Rational c);

    static Polynomial one() { return Polynomial(Rational(1)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The constant term (0 if absent).
    Rational constant_term() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    /// Leading term in the canonical order.
    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    int total_degree() const;
    int degree_in(const VarKey& v) const;
    void collect_vars(std::set<VarKey>& out) const;
    bool depends_on(const VarKey& v) const { return degree_in(v) > 0; }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial&) const;
    Polynomial operator-(const Polynomial&) const;
    Polynomial operator*(const Polynomial&) const;
    Polynomial& operator+=(const Polynomial&);
    Polynomial& operator-=(const Polynomial&);
    Polynomial operator*(const Rational&) const;
    Polynomial pow(int e) const; // e >= 0

    bool operator==(const Polynomial&) const = default;

    /// Formal partial derivative (no atom chain rule at this level).
    Polynomial derivative(const VarKey& v) const;

    /// Antiderivative in v; valid because each term gains one power of v.
    Polynomial antiderivative(const VarKey& v) const;

    /// Exact evaluation at a point; variables absent from the map are an error.
    Rational eval(const std::map<VarKey, Rational>& point) const;

    /// Coefficients with respect to powers of v: result[k] is v-free.
    std::map<int, Polynomial> univariate_view(const VarKey& v) const;
    static Polynomial from_univariate(const VarKey& v, const std::map<int, Polynomial>& coeffs);

    void add_term(const Monomial& m, const Rational& c);

private:
    std::map<Monomial, Rational> terms_;
};

/// GCD over Q[x...], canonical up to the convention: primitive over Z with
/// positive leading coefficient. gcd(0, b) = b.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// Exact division; nullopt when b does not divide a.
std::optional<Polynomial> poly_divide_exact(const Polynomial& a, const Polynomial& b);

} // namespace jetvar
