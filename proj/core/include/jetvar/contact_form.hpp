#pragma once

#include "jetvar/expr.hpp"
#include "jetvar/jet_ops.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace jetvar {

/// Generator word of one exterior monomial, canonical layout: contact factors
/// theta^i_L sorted by (field, multi-index) first, then horizontal factors
/// dx^l sorted by direction. Signs from reordering live in the coefficient.
struct FormKey {
    std::vector<std::pair<int, MultiIndex>> thetas;
    std::vector<int> dxs;

    int contact_degree() const { return static_cast<int>(thetas.size()); }
    int horizontal_degree() const { return static_cast<int>(dxs.size()); }
    int total_degree() const { return contact_degree() + horizontal_degree(); }

    bool operator==(const FormKey&) const = default;
    auto operator<=>(const FormKey&) const = default;
};

/// Pairing of a derivation-vector with the form generators; used for interior
/// products with generalized vector fields, their horizontal parts, and the
/// coordinate vectors del^L_i.
struct FormContraction {
    std::function<Expr(int)> dx;                       // <v, dx^l>
    std::function<Expr(int, const MultiIndex&)> theta; // <v, theta^i_L>
};

/// Exterior form of locally finite jet order in the {dx^l, theta^i_L} basis,
/// expanded over canonical monomials with Expr coefficients. Antisymmetry is
/// structural: repeated generators vanish, swaps flip the coefficient sign.
class ContactForm {
public:
    ContactForm() = default;
    explicit ContactForm(const BundleSpec* spec) : spec_(spec) {}

    static ContactForm scalar(const BundleSpec* spec, Expr coeff);
    static ContactForm theta(const BundleSpec* spec, int field, const MultiIndex& mi);
    static ContactForm dx(const BundleSpec* spec, int dir);
    /// omega = dx^0 ^ ... ^ dx^{n-1}
    static ContactForm volume(const BundleSpec* spec);
    /// omega_l = del_l | omega (carries the (-1)^l sign)
    static ContactForm volume_omitting(const BundleSpec* spec, int dir);
    /// e * omega
    static ContactForm from_density(const BundleSpec* spec, const Expr& e);
    /// sum_l J^l * omega_l
    static ContactForm from_current(const BundleSpec* spec, const std::vector<Expr>& comps);
    /// sum_i delta_i * theta^i ^ omega
    static ContactForm from_source(const BundleSpec* spec, const SourceForm& src);

    const BundleSpec* bundle() const { return spec_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<FormKey, Expr>& terms() const { return terms_; }

    ContactForm operator-() const;
    ContactForm operator+(const ContactForm&) const;
    ContactForm operator-(const ContactForm&) const;
    ContactForm& operator+=(const ContactForm&);
    ContactForm operator*(const Expr& scalar) const;
    ContactForm wedge(const ContactForm&) const;
    bool operator==(const ContactForm& other) const { return terms_ == other.terms_; }

    int max_contact_degree() const;
    ContactForm contact_part(int k) const;    // h_k
    ContactForm horizontal_part(int s) const; // h^s
    ContactForm bidegree_part(int k, int s) const;
    ContactForm h0() const { return contact_part(0); }

    /// Degree-0 derivation d_l: total derivative on coefficients,
    /// theta^i_L -> theta^i_{l+L}, dx -> 0.
    ContactForm total_derivative(int dir) const;
    ContactForm total_derivative(const MultiIndex& mi) const;

    ContactForm d_H() const; // dx^l ^ d_l(phi)
    ContactForm d_V() const; // theta^i_L ^ del^L_i(phi)
    ContactForm d() const;   // d_H + d_V

    /// Interior product with the coordinate vector del^L_i (generator-level).
    ContactForm interior_jet(int field, const MultiIndex& mi) const;
    /// Interior product with an abstract derivation-vector.
    ContactForm interior(const FormContraction& v) const;

    /// Interior Euler projector: sum_{k>0} (1/k) rbar(h_k h^n phi) with
    /// rbar(phi) = sum (-1)^{|L|} theta^i ^ d_L(del^L_i | phi).
    ContactForm rho() const;

    /// Coefficient of omega; requires a (0,n) form.
    Expr density() const;
    /// J^l of a (0,n-1) form sum J^l omega_l.
    std::vector<Expr> current_components() const;
    /// delta_i of a source-shaped (1,n) form sum delta_i theta^i ^ omega.
    SourceForm as_source_form() const;

    std::string str() const;

    void add_term(const FormKey& key, const Expr& coeff);

private:
    const BundleSpec* spec_ = nullptr;
    std::map<FormKey, Expr> terms_;
};

/// Lie derivative along an abstract vector via Cartan's formula
/// L_v phi = v | d(phi) + d(v | phi).
ContactForm lie_derivative(const FormContraction& v, const ContactForm& phi);

} // namespace jetvar
