#include "jetvar/contact_form.hpp"

#include "jetvar/errors.hpp"

#include <algorithm>
#include <optional>

namespace jetvar {

namespace {

/// Sort a raw generator word into canonical layout; returns the permutation
/// sign, or nullopt when a generator repeats (the monomial vanishes).
std::optional<int> canonicalize(std::vector<std::pair<int, MultiIndex>>& thetas,
                                std::vector<int>& dxs, int pre_swaps) {
    int swaps = pre_swaps;
    // insertion sort with transposition counting (words are short)
    for (std::size_t i = 1; i < thetas.size(); ++i)
        for (std::size_t j = i; j > 0 && thetas[j] < thetas[j - 1]; --j) {
            std::swap(thetas[j], thetas[j - 1]);
            ++swaps;
        }
    for (std::size_t i = 1; i + 1 <= thetas.size(); ++i)
        if (thetas[i] == thetas[i - 1]) return std::nullopt;
    for (std::size_t i = 1; i < dxs.size(); ++i)
        for (std::size_t j = i; j > 0 && dxs[j] < dxs[j - 1]; --j) {
            std::swap(dxs[j], dxs[j - 1]);
            ++swaps;
        }
    for (std::size_t i = 1; i + 1 <= dxs.size(); ++i)
        if (dxs[i] == dxs[i - 1]) return std::nullopt;
    return swaps % 2 == 0 ? 1 : -1;
}

} // namespace

void ContactForm::add_term(const FormKey& key, const Expr& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ContactForm ContactForm::scalar(const BundleSpec* spec, Expr coeff) {
    ContactForm out(spec);
    out.add_term(FormKey{}, std::move(coeff));
    return out;
}

ContactForm ContactForm::theta(const BundleSpec* spec, int field, const MultiIndex& mi) {
    ContactForm out(spec);
    FormKey key;
    key.thetas.emplace_back(field, mi);
    out.add_term(key, Expr::from_rational(1));
    return out;
}

ContactForm ContactForm::dx(const BundleSpec* spec, int dir) {
    ContactForm out(spec);
    FormKey key;
    key.dxs.push_back(dir);
    out.add_term(key, Expr::from_rational(1));
    return out;
}

ContactForm ContactForm::volume(const BundleSpec* spec) {
    ContactForm out(spec);
    FormKey key;
    for (int l = 0; l < spec->base_dim(); ++l) key.dxs.push_back(l);
    out.add_term(key, Expr::from_rational(1));
    return out;
}

ContactForm ContactForm::volume_omitting(const BundleSpec* spec, int dir) {
    ContactForm out(spec);
    FormKey key;
    for (int l = 0; l < spec->base_dim(); ++l)
        if (l != dir) key.dxs.push_back(l);
    out.add_term(key, Expr::from_rational(dir % 2 == 0 ? 1 : -1));
    return out;
}

ContactForm ContactForm::from_density(const BundleSpec* spec, const Expr& e) {
    return volume(spec) * e;
}

ContactForm ContactForm::from_current(const BundleSpec* spec, const std::vector<Expr>& comps) {
    ContactForm out(spec);
    for (int l = 0; l < spec->base_dim(); ++l)
        out += volume_omitting(spec, l) * comps[static_cast<std::size_t>(l)];
    return out;
}

ContactForm ContactForm::from_source(const BundleSpec* spec, const SourceForm& src) {
    ContactForm out(spec);
    ContactForm vol = volume(spec);
    for (int i = 0; i < spec->field_count(); ++i) {
        const Expr& c = src.components[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        out += theta(spec, i, MultiIndex(spec->base_dim())).wedge(vol) * c;
    }
    return out;
}

ContactForm ContactForm::operator-() const {
    ContactForm out(spec_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

ContactForm& ContactForm::operator+=(const ContactForm& other) {
    if (!spec_) spec_ = other.spec_;
    for (const auto& [k, c] : other.terms_) add_term(k, c);
    return *this;
}

ContactForm ContactForm::operator+(const ContactForm& other) const {
    ContactForm out = *this;
    out += other;
    return out;
}

ContactForm ContactForm::operator-(const ContactForm& other) const { return *this + (-other); }

ContactForm ContactForm::operator*(const Expr& scalar) const {
    ContactForm out(spec_);
    if (scalar.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.add_term(k, c * scalar);
    return out;
}

ContactForm ContactForm::wedge(const ContactForm& other) const {
    ContactForm out(spec_ ? spec_ : other.spec_);
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : other.terms_) {
            // crossing k2's thetas over k1's dxs
            int pre = static_cast<int>(k2.thetas.size() * k1.dxs.size());
            FormKey key;
            key.thetas = k1.thetas;
            key.thetas.insert(key.thetas.end(), k2.thetas.begin(), k2.thetas.end());
            key.dxs = k1.dxs;
            key.dxs.insert(key.dxs.end(), k2.dxs.begin(), k2.dxs.end());
            auto sign = canonicalize(key.thetas, key.dxs, pre);
            if (!sign) continue;
            Expr coeff = c1 * c2;
            out.add_term(key, *sign > 0 ? coeff : -coeff);
        }
    return out;
}

int ContactForm::max_contact_degree() const {
    int k = 0;
    for (const auto& [key, c] : terms_) k = std::max(k, key.contact_degree());
    return k;
}

ContactForm ContactForm::contact_part(int k) const {
    ContactForm out(spec_);
    for (const auto& [key, c] : terms_)
        if (key.contact_degree() == k) out.terms_.emplace(key, c);
    return out;
}

ContactForm ContactForm::horizontal_part(int s) const {
    ContactForm out(spec_);
    for (const auto& [key, c] : terms_)
        if (key.horizontal_degree() == s) out.terms_.emplace(key, c);
    return out;
}

ContactForm ContactForm::bidegree_part(int k, int s) const {
    ContactForm out(spec_);
    for (const auto& [key, c] : terms_)
        if (key.contact_degree() == k && key.horizontal_degree() == s) out.terms_.emplace(key, c);
    return out;
}

ContactForm ContactForm::total_derivative(int dir) const {
    ContactForm out(spec_);
    for (const auto& [key, c] : terms_) {
        Expr dc = jetvar::total_derivative(c, dir);
        if (!dc.is_zero()) out.add_term(key, dc);
        for (std::size_t j = 0; j < key.thetas.size(); ++j) {
            FormKey bumped = key;
            bumped.thetas[j].second = bumped.thetas[j].second.plus(dir);
            auto sign = canonicalize(bumped.thetas, bumped.dxs, 0);
            if (!sign) continue;
            out.add_term(bumped, *sign > 0 ? c : -c);
        }
    }
    return out;
}

ContactForm ContactForm::total_derivative(const MultiIndex& mi) const {
    ContactForm out = *this;
    for (int dir : mi.directions()) out = out.total_derivative(dir);
    return out;
}

ContactForm ContactForm::d_H() const {
    ContactForm out(spec_);
    for (int l = 0; l < spec_->base_dim(); ++l)
        out += dx(spec_, l).wedge(total_derivative(l));
    return out;
}

ContactForm ContactForm::d_V() const {
    ContactForm out(spec_);
    for (const auto& [key, c] : terms_) {
        // candidate jet variables: those of the coefficient plus atom deps
        std::set<VarKey> jets;
        for (const VarKey& v : c.variables()) {
            if (v.is_jet())
                jets.insert(v);
            else if (v.is_atom())
                for (const VarKey& dep : spec_->atom(v.id).jet_deps) jets.insert(dep);
        }
        ContactForm term(spec_);
        term.terms_.emplace(key, c);
        for (const VarKey& v : jets) {
            Expr p = c.partial(v);
            if (p.is_zero()) continue;
            ContactForm keyed(spec_);
            keyed.terms_.emplace(key, p);
            out += theta(spec_, v.id, v.jet).wedge(keyed);
        }
    }
    return out;
}

ContactForm ContactForm::d() const { return d_H() + d_V(); }

ContactForm ContactForm::interior_jet(int field, const MultiIndex& mi) const {
    ContactForm out(spec_);
    std::pair<int, MultiIndex> target{field, mi};
    for (const auto& [key, c] : terms_)
        for (std::size_t j = 0; j < key.thetas.size(); ++j)
            if (key.thetas[j] == target) {
                FormKey reduced = key;
                reduced.thetas.erase(reduced.thetas.begin() + static_cast<std::ptrdiff_t>(j));
                out.add_term(reduced, j % 2 == 0 ? c : -c);
                break;
            }
    return out;
}

ContactForm ContactForm::interior(const FormContraction& v) const {
    ContactForm out(spec_);
    for (const auto& [key, c] : terms_) {
        for (std::size_t j = 0; j < key.thetas.size(); ++j) {
            Expr pairing = v.theta(key.thetas[j].first, key.thetas[j].second);
            if (pairing.is_zero()) continue;
            FormKey reduced = key;
            reduced.thetas.erase(reduced.thetas.begin() + static_cast<std::ptrdiff_t>(j));
            Expr coeff = c * pairing;
            out.add_term(reduced, j % 2 == 0 ? coeff : -coeff);
        }
        for (std::size_t j = 0; j < key.dxs.size(); ++j) {
            Expr pairing = v.dx(key.dxs[j]);
            if (pairing.is_zero()) continue;
            FormKey reduced = key;
            reduced.dxs.erase(reduced.dxs.begin() + static_cast<std::ptrdiff_t>(j));
            std::size_t pos = key.thetas.size() + j;
            Expr coeff = c * pairing;
            out.add_term(reduced, pos % 2 == 0 ? coeff : -coeff);
        }
    }
    return out;
}

ContactForm ContactForm::rho() const {
    const int n = spec_->base_dim();
    ContactForm phi_n = horizontal_part(n);
    ContactForm out(spec_);
    for (int k = 1; k <= phi_n.max_contact_degree(); ++k) {
        ContactForm phi_k = phi_n.contact_part(k);
        if (phi_k.is_zero()) continue;
        std::set<std::pair<int, MultiIndex>> occurring;
        for (const auto& [key, c] : phi_k.terms_)
            occurring.insert(key.thetas.begin(), key.thetas.end());
        ContactForm rbar(spec_);
        for (const auto& [field, mi] : occurring) {
            ContactForm contracted = phi_k.interior_jet(field, mi);
            if (contracted.is_zero()) continue;
            ContactForm term =
                theta(spec_, field, MultiIndex(n)).wedge(contracted.total_derivative(mi));
            rbar += mi.degree() % 2 == 0 ? term : -term;
        }
        out += rbar * Expr::from_rational(Rational(1, k));
    }
    return out;
}

Expr ContactForm::density() const {
    FormKey vol;
    for (int l = 0; l < spec_->base_dim(); ++l) vol.dxs.push_back(l);
    Expr out;
    for (const auto& [key, c] : terms_) {
        if (key == vol)
            out = c;
        else
            throw InternalInconsistency("form is not a horizontal density");
    }
    return out;
}

std::vector<Expr> ContactForm::current_components() const {
    const int n = spec_->base_dim();
    std::vector<Expr> comps(static_cast<std::size_t>(n));
    for (const auto& [key, c] : terms_) {
        if (key.contact_degree() != 0 || key.horizontal_degree() != n - 1)
            throw InternalInconsistency("form is not an (n-1)-horizontal current");
        int missing = -1;
        std::size_t at = 0;
        for (int l = 0; l < n; ++l)
            if (at < key.dxs.size() && key.dxs[at] == l)
                ++at;
            else
                missing = l;
        comps[static_cast<std::size_t>(missing)] = missing % 2 == 0 ? c : -c;
    }
    return comps;
}

SourceForm ContactForm::as_source_form() const {
    const int n = spec_->base_dim();
    SourceForm out;
    out.components.assign(static_cast<std::size_t>(spec_->field_count()), Expr{});
    for (const auto& [key, c] : terms_) {
        if (key.contact_degree() != 1 || key.horizontal_degree() != n ||
            !key.thetas[0].second.empty())
            throw InternalInconsistency("form is not in source shape");
        out.components[static_cast<std::size_t>(key.thetas[0].first)] = c;
    }
    return out;
}

std::string ContactForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += "(" + c.str() + ")";
        for (const auto& [field, mi] : key.thetas) {
            out += "*theta[" + (spec_ ? spec_->field_name(field) : "?");
            if (!mi.empty()) out += ";" + mi.str(spec_->base());
            out += "]";
        }
        for (int l : key.dxs)
            out += "*dx[" + (spec_ ? spec_->base().coords[static_cast<std::size_t>(l)] : "?") + "]";
    }
    return out;
}

ContactForm lie_derivative(const FormContraction& v, const ContactForm& phi) {
    return phi.d().interior(v) + phi.interior(v).d();
}

} // namespace jetvar
