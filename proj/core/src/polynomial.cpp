#include "jetvar/polynomial.hpp"

#include "jetvar/errors.hpp"

#include <algorithm>

namespace jetvar {

Monomial::Monomial(const VarKey& v, int e) {
    if (e != 0) factors_.emplace_back(v, e);
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [v, e] : factors_) d += e;
    return d;
}

int Monomial::degree_in(const VarKey& v) const {
    for (const auto& [w, e] : factors_)
        if (w == v) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin(), b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first))
            out.factors_.push_back(*a++);
        else if (a == factors_.end() || b->first < a->first)
            out.factors_.push_back(*b++);
        else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    return out;
}

bool Monomial::divides(const Monomial& other) const {
    for (const auto& [v, e] : factors_)
        if (other.degree_in(v) < e) return false;
    return true;
}

Monomial Monomial::divide_into(const Monomial& other) const {
    Monomial out;
    auto a = factors_.begin();
    for (const auto& [v, e] : other.factors_) {
        int sub = 0;
        if (a != factors_.end() && a->first == v) sub = (a++)->second;
        if (e - sub > 0) out.factors_.emplace_back(v, e - sub);
    }
    return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
    auto a = factors_.rbegin(), b = other.factors_.rbegin();
    while (a != factors_.rend() && b != other.factors_.rend()) {
        if (a->first != b->first)
            return a->first < b->first ? std::strong_ordering::less : std::strong_ordering::greater;
        if (a->second != b->second) return a->second <=> b->second;
        ++a, ++b;
    }
    if (a != factors_.rend()) return std::strong_ordering::greater;
    if (b != other.factors_.rend()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

Polynomial::Polynomial(Rational c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

Polynomial::Polynomial(const VarKey& v) { terms_.emplace(Monomial(v), Rational(1)); }

Polynomial::Polynomial(Monomial m, Rational c) {
    if (c != 0) terms_.emplace(std::move(m), std::move(c));
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const { return terms_.rbegin()->first; }
const Rational& Polynomial::leading_coefficient() const { return terms_.rbegin()->second; }

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

int Polynomial::degree_in(const VarKey& v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
}

void Polynomial::collect_vars(std::set<VarKey>& out) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors()) out.insert(v);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    out += other;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    Polynomial out = *this;
    out -= other;
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : other.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (c == 0) return {};
    Polynomial out = *this;
    for (auto& [m, k] : out.terms_) k *= c;
    return out;
}

Polynomial Polynomial::pow(int e) const {
    Polynomial acc = Polynomial::one();
    Polynomial b = *this;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) acc = acc * b;
        if (k > 1) b = b * b;
    }
    return acc;
}

Polynomial Polynomial::derivative(const VarKey& v) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        int e = m.degree_in(v);
        if (e == 0) continue;
        Monomial reduced = Monomial(v).divide_into(m);
        out.add_term(reduced, c * e);
    }
    return out;
}

Polynomial Polynomial::antiderivative(const VarKey& v) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        int e = m.degree_in(v);
        out.add_term(m * Monomial(v), c / (e + 1));
    }
    return out;
}

Rational Polynomial::eval(const std::map<VarKey, Rational>& point) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : m.factors()) {
            auto it = point.find(v);
            if (it == point.end()) throw Error("eval: missing value for a variable");
            t *= rational_pow(it->second, e);
        }
        total += t;
    }
    return total;
}

std::map<int, Polynomial> Polynomial::univariate_view(const VarKey& v) const {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : terms_) {
        int e = m.degree_in(v);
        Monomial rest = Monomial(v, e).divide_into(m);
        out[e].add_term(rest, c);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Polynomial Polynomial::from_univariate(const VarKey& v, const std::map<int, Polynomial>& coeffs) {
    Polynomial out;
    for (const auto& [e, p] : coeffs) {
        Monomial ve(v, e);
        for (const auto& [m, c] : p.terms()) out.add_term(m * ve, c);
    }
    return out;
}

std::optional<Polynomial> poly_divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return std::nullopt;
    Polynomial rem = a, quot;
    while (!rem.is_zero()) {
        const Monomial& lm = rem.leading_monomial();
        if (!b.leading_monomial().divides(lm)) return std::nullopt;
        Monomial q = b.leading_monomial().divide_into(lm);
        Rational qc = rem.leading_coefficient() / b.leading_coefficient();
        quot.add_term(q, qc);
        rem -= b * Polynomial(q, qc);
    }
    return quot;
}

} // namespace jetvar
