#include "jetvar/jet_ops.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

Expr total_derivative(const Expr& e, int dir) {
    const BundleSpec* spec = e.bundle();
    Expr out;
    for (const VarKey& v : e.variables()) {
        Expr df = e.partial_formal(v);
        if (df.is_zero()) continue;
        switch (v.kind) {
        case VarKind::Base:
            if (v.id == dir) out += df;
            break;
        case VarKind::Jet:
            out += df * spec->jet(v.id, v.jet.plus(dir));
            break;
        case VarKind::Atom: {
            // d_l(atom) = rule(atom, x^l) + sum over jet deps y^i_{l+L} * rule
            Expr datom = spec->atom_rule(v.id, VarKey::base(dir));
            for (const VarKey& dep : spec->atom(v.id).jet_deps)
                datom += spec->jet(dep.id, dep.jet.plus(dir)) * spec->atom_rule(v.id, dep);
            if (!datom.is_zero()) out += df * datom;
            break;
        }
        }
    }
    return out;
}

Expr total_derivative(const Expr& e, const MultiIndex& mi) {
    Expr out = e;
    for (int dir : mi.directions()) out = total_derivative(out, dir);
    return out;
}

SourceForm euler_lagrange(const Lagrangian& L) {
    const BundleSpec* spec = L.spec;
    int r = L.order();
    SourceForm out;
    out.components.reserve(static_cast<std::size_t>(spec->field_count()));
    for (int i = 0; i < spec->field_count(); ++i) {
        Expr delta;
        for (const MultiIndex& mi : MultiIndex::enumerate_up_to(spec->base_dim(), r)) {
            Expr p = L.density.partial(VarKey::jet_var(i, mi));
            if (p.is_zero()) continue;
            Expr term = total_derivative(p, mi);
            delta += (mi.degree() % 2 == 0) ? term : -term;
        }
        out.components.push_back(std::move(delta));
    }
    return out;
}

bool is_variationally_trivial(const Lagrangian& L) { return euler_lagrange(L).is_zero(); }

Expr total_divergence(const std::vector<Expr>& sigma, const BundleSpec& spec) {
    Expr out;
    for (int dir = 0; dir < spec.base_dim(); ++dir)
        out += total_derivative(sigma[static_cast<std::size_t>(dir)], dir);
    return out;
}

} // namespace jetvar
