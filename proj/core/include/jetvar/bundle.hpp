#pragma once

#include "jetvar/multi_index.hpp"
#include "jetvar/rational.hpp"

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace jetvar {

class Expr;

/// Base manifold X: dimension and coordinate names, in declaration order.
struct BaseSpec {
    std::vector<std::string> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    int index_of(const std::string& name) const; // -1 if absent
};

enum class VarKind : std::uint8_t { Base = 0, Jet = 1, Atom = 2 };

/// One coordinate of the polynomial ring: a base coordinate x^l, a jet
/// coordinate y^i_L, or a registered function atom. The canonical variable
/// order is base < jets (by field, then multi-index) < atoms (by name rank).
struct VarKey {
    VarKind kind = VarKind::Base;
    int id = 0;     // base direction, field index, or atom id
    MultiIndex jet; // meaningful for kind == Jet only

    static VarKey base(int dir) { return {VarKind::Base, dir, {}}; }
    static VarKey jet_var(int field, MultiIndex mi) {
        return {VarKind::Jet, field, std::move(mi)};
    }
    static VarKey atom(int id) { return {VarKind::Atom, id, {}}; }

    bool is_jet() const { return kind == VarKind::Jet; }
    bool is_base() const { return kind == VarKind::Base; }
    bool is_atom() const { return kind == VarKind::Atom; }

    bool operator==(const VarKey&) const = default;
    std::strong_ordering operator<=>(const VarKey&) const = default;
};

/// Declaration of an atom: a named scalar whose partial derivatives with
/// respect to base and jet coordinates are user-registered expressions.
/// Variables without a rule are treated as absent dependencies (rule 0).
struct AtomRuleSource {
    std::string variable; // textual variable reference, e.g. "q1" or "u[t,x]"
    std::string rule;     // expression source in the DSL grammar
};

struct AtomDecl {
    std::string name;
    std::string doc;
    std::vector<AtomRuleSource> rules;
};

/// A registered atom with parsed rules. jet_deps/base_deps list the variables
/// carrying a nonzero rule; jet_order is the max |L| over jet dependencies.
struct Atom {
    std::string name;
    std::string doc;
    std::vector<std::pair<VarKey, Expr>> rules; // sorted by key
    std::vector<VarKey> jet_deps;
    std::vector<int> base_deps;
    int jet_order = 0;
};

/// The fibre bundle chart: base coordinates, fibre field names, atom registry.
/// Immutable after creation; Expr values reference it by plain pointer, so a
/// BundleSpec must outlive every expression built over it (hold the shared_ptr).
class BundleSpec {
public:
    static std::shared_ptr<const BundleSpec> create(BaseSpec base,
                                                    std::vector<std::string> fields,
                                                    std::vector<AtomDecl> atoms = {});

    ~BundleSpec();
    BundleSpec(const BundleSpec&) = delete;
    BundleSpec& operator=(const BundleSpec&) = delete;

    const BaseSpec& base() const { return base_; }
    int base_dim() const { return base_.dim(); }
    int field_count() const { return static_cast<int>(fields_.size()); }
    const std::vector<std::string>& fields() const { return fields_; }
    const std::string& field_name(int i) const { return fields_[static_cast<std::size_t>(i)]; }
    int field_index(const std::string& name) const; // -1 if absent

    int atom_count() const { return static_cast<int>(atoms_.size()); }
    const Atom& atom(int id) const { return atoms_[static_cast<std::size_t>(id)]; }
    int atom_index(const std::string& name) const; // -1 if absent

    /// Registered rule for d(atom)/d(var), or the zero expression.
    const Expr& atom_rule(int id, const VarKey& var) const;

    std::string var_name(const VarKey& key) const;

    // Expr factories.
    Expr zero() const;
    Expr constant(const Rational& c) const;
    Expr constant(long c) const;
    Expr var(const VarKey& key) const;
    Expr base_var(int dir) const;
    Expr jet(int field, const MultiIndex& mi) const;
    Expr field_var(int field) const; // jet with empty multi-index
    Expr atom_var(int id) const;

    /// Parse an expression in the DSL grammar over this bundle's names.
    Expr parse(const std::string& src) const;

    /// Parse a variable reference ("t", "q1", "u[t,x]", "q_tt", "r_inv").
    VarKey parse_var(const std::string& src) const;

private:
    BundleSpec() = default;
    void validate_atom_closure() const;

    BaseSpec base_;
    std::vector<std::string> fields_;
    std::vector<Atom> atoms_; // sorted by name; id = rank
    std::shared_ptr<const Expr> zero_;
};

} // namespace jetvar
