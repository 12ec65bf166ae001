#include "jetvar/bundle.hpp"

#include "jetvar/errors.hpp"
#include "jetvar/expr.hpp"
#include "parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace jetvar {

int BaseSpec::index_of(const std::string& name) const {
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k] == name) return static_cast<int>(k);
    return -1;
}

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

} // namespace

BundleSpec::~BundleSpec() = default;

std::shared_ptr<const BundleSpec> BundleSpec::create(BaseSpec base,
                                                     std::vector<std::string> fields,
                                                     std::vector<AtomDecl> atoms) {
    if (base.dim() < 1) throw Error("bundle: base dimension must be at least 1");
    if (fields.empty()) throw Error("bundle: at least one fibre field required");

    std::shared_ptr<BundleSpec> spec(new BundleSpec());
    spec->base_ = std::move(base);
    spec->fields_ = std::move(fields);

    std::set<std::string> names;
    for (const auto& c : spec->base_.coords) {
        if (!valid_name(c)) throw Error("bundle: invalid coordinate name '" + c + "'");
        if (!names.insert(c).second) throw Error("bundle: duplicate name '" + c + "'");
    }
    for (const auto& f : spec->fields_) {
        if (!valid_name(f)) throw Error("bundle: invalid field name '" + f + "'");
        if (!names.insert(f).second) throw Error("bundle: duplicate name '" + f + "'");
    }

    std::sort(atoms.begin(), atoms.end(),
              [](const AtomDecl& a, const AtomDecl& b) { return a.name < b.name; });
    for (const auto& decl : atoms) {
        if (!valid_name(decl.name)) throw Error("bundle: invalid atom name '" + decl.name + "'");
        if (!names.insert(decl.name).second)
            throw Error("bundle: duplicate name '" + decl.name + "'");
        Atom a;
        a.name = decl.name;
        a.doc = decl.doc;
        spec->atoms_.push_back(std::move(a));
    }

    // rules may reference any atom, so parse only after all names exist
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        Atom& atom = spec->atoms_[k];
        for (const auto& rule : atoms[k].rules) {
            VarKey var = detail::parse_var_reference(*spec, rule.variable);
            if (var.is_atom())
                throw Error("atom '" + atom.name + "': derivative rules are keyed by coordinates");
            Expr rhs = detail::parse_expression(*spec, rule.rule);
            if (rhs.is_zero()) continue;
            atom.rules.emplace_back(var, std::move(rhs));
            if (var.is_jet()) {
                atom.jet_deps.push_back(var);
                atom.jet_order = std::max(atom.jet_order, var.jet.degree());
            } else {
                atom.base_deps.push_back(var.id);
            }
        }
        std::sort(atom.rules.begin(), atom.rules.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::sort(atom.jet_deps.begin(), atom.jet_deps.end());
        std::sort(atom.base_deps.begin(), atom.base_deps.end());
    }

    spec->zero_ = std::make_shared<const Expr>();
    spec->validate_atom_closure();
    return spec;
}

void BundleSpec::validate_atom_closure() const {
    for (std::size_t id = 0; id < atoms_.size(); ++id) {
        const Atom& atom = atoms_[id];
        // coordinates with a rule plus coordinates the rules depend on; a rule
        // depending on a coordinate the atom has no rule for breaks closure too
        std::set<VarKey> candidates;
        for (const auto& [v, rhs] : atom.rules) {
            candidates.insert(v);
            for (const VarKey& dep : rhs.variables())
                if (!dep.is_atom()) candidates.insert(dep);
        }
        for (auto i = candidates.begin(); i != candidates.end(); ++i)
            for (auto j = std::next(i); j != candidates.end(); ++j) {
                const Expr& ri = atom_rule(static_cast<int>(id), *i);
                const Expr& rj = atom_rule(static_cast<int>(id), *j);
                if (!(ri.partial(*j) - rj.partial(*i)).is_zero())
                    throw Error("atom '" + atom.name + "': derivative rules for " + var_name(*i) +
                                " and " + var_name(*j) + " do not commute");
            }
    }
}

int BundleSpec::field_index(const std::string& name) const {
    for (std::size_t k = 0; k < fields_.size(); ++k)
        if (fields_[k] == name) return static_cast<int>(k);
    return -1;
}

int BundleSpec::atom_index(const std::string& name) const {
    for (std::size_t k = 0; k < atoms_.size(); ++k)
        if (atoms_[k].name == name) return static_cast<int>(k);
    return -1;
}

const Expr& BundleSpec::atom_rule(int id, const VarKey& var) const {
    const Atom& a = atom(id);
    auto it = std::lower_bound(a.rules.begin(), a.rules.end(), var,
                               [](const auto& r, const VarKey& v) { return r.first < v; });
    if (it != a.rules.end() && it->first == var) return it->second;
    return *zero_;
}

std::string BundleSpec::var_name(const VarKey& key) const {
    switch (key.kind) {
    case VarKind::Base:
        return base_.coords[static_cast<std::size_t>(key.id)];
    case VarKind::Jet: {
        const std::string& f = fields_[static_cast<std::size_t>(key.id)];
        if (key.jet.empty()) return f;
        return f + "[" + key.jet.str(base_) + "]";
    }
    case VarKind::Atom:
        return atoms_[static_cast<std::size_t>(key.id)].name;
    }
    return "?";
}

Expr BundleSpec::zero() const { return Expr::make(this, Polynomial{}, Polynomial::one()); }

Expr BundleSpec::constant(const Rational& c) const {
    return Expr::make(this, Polynomial(c), Polynomial::one());
}

Expr BundleSpec::constant(long c) const { return constant(Rational(c)); }

Expr BundleSpec::var(const VarKey& key) const {
    return Expr::make(this, Polynomial(key), Polynomial::one());
}

Expr BundleSpec::base_var(int dir) const { return var(VarKey::base(dir)); }

Expr BundleSpec::jet(int field, const MultiIndex& mi) const {
    return var(VarKey::jet_var(field, mi));
}

Expr BundleSpec::field_var(int field) const { return jet(field, MultiIndex(base_dim())); }

Expr BundleSpec::atom_var(int id) const { return var(VarKey::atom(id)); }

Expr BundleSpec::parse(const std::string& src) const {
    return detail::parse_expression(*this, src);
}

VarKey BundleSpec::parse_var(const std::string& src) const {
    return detail::parse_var_reference(*this, src);
}

} // namespace jetvar
