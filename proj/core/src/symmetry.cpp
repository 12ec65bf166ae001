#include "jetvar/symmetry.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

ContactForm lie_derivative_lagrangian(const GeneralizedVectorField& v, const Lagrangian& L) {
    const BundleSpec* spec = L.spec;
    ContactForm Lform = ContactForm::from_density(spec, L.density);
    ContactForm cartan = lie_derivative(v.contraction(), Lform);

    // split form v_V | dL + d_H(v_H | L) + 𝓁 d_V(v_H | omega)
    auto [v_h, v_v] = v.vertical_split();
    ContactForm split = Lform.d().interior(v_v.contraction());
    split += Lform.interior(v.horizontal_contraction()).d_H();
    split += ContactForm::volume(spec).interior(v.horizontal_contraction()).d_V() * L.density;

    if (!(cartan - split).is_zero())
        throw InternalInconsistency("Cartan and split forms of the Lie derivative disagree");
    return cartan;
}

VariationalDecomposition first_variational_formula(const GeneralizedVectorField& v,
                                                   const Lagrangian& L) {
    const BundleSpec* spec = L.spec;
    VariationalSplit split = first_variational_split(L);
    auto [v_h, v_v] = v.vertical_split();

    VariationalDecomposition out;
    out.euler_piece = split.source_form.interior(v_v.contraction());
    out.boundary_piece = split.xi.value.interior(v.contraction()).h0().d_H();
    out.warp_piece =
        ContactForm::volume(spec).interior(v.horizontal_contraction()).d_V() * L.density;
    out.total = lie_derivative_lagrangian(v, L);

    if (!(out.euler_piece + out.boundary_piece + out.warp_piece - out.total).is_zero())
        throw InternalInconsistency("first variational formula pieces do not sum to L_v L");
    return out;
}

SymmetryReport characteristic_check(const GeneralizedVectorField& v, const Lagrangian& L) {
    if (!v.is_projectable())
        throw NotProjectable("characteristic check requires base components depending on x only");

    SymmetryReport report;
    report.lie_density = lie_derivative_lagrangian(v, L).density();
    report.residual.components.assign(static_cast<std::size_t>(L.spec->field_count()), Expr{});

    if (report.lie_density.is_zero()) {
        report.kind = SymmetryKind::Exact;
        report.sigma = std::vector<Expr>(static_cast<std::size_t>(L.spec->base_dim()),
                                         L.spec->zero());
        return report;
    }

    Lagrangian as_density(L.spec, report.lie_density);
    SourceForm closure = euler_lagrange(as_density);
    if (closure.is_zero()) {
        report.kind = SymmetryKind::Divergence;
        try {
            report.sigma = invert_total_divergence(report.lie_density, *L.spec);
        } catch (const UnsupportedFragment&) {
            report.sigma.reset(); // verdict stands, sigma not constructible here
        }
        return report;
    }

    report.kind = SymmetryKind::None;
    report.residual = std::move(closure);
    return report;
}

NoetherCurrent noether_current(const GeneralizedVectorField& v, const Lagrangian& L,
                               const std::vector<Expr>* sigma) {
    if (!v.is_projectable())
        throw NotProjectable("Noether currents require a projectable vector field");
    VariationalSplit split = first_variational_split(L);
    ContactForm current_form = split.xi.value.interior(v.contraction()).h0();
    NoetherCurrent J;
    J.components = current_form.current_components();
    if (sigma)
        for (std::size_t l = 0; l < J.components.size(); ++l)
            J.components[l] -= (*sigma)[l];
    return J;
}

Expr conservation_residual(const GeneralizedVectorField& v, const Lagrangian& L,
                           const NoetherCurrent& J) {
    Expr residual = total_divergence(J.components, *L.spec);
    SourceForm delta = euler_lagrange(L);
    for (int i = 0; i < L.spec->field_count(); ++i)
        residual += v.vertical_component(i) * delta.components[static_cast<std::size_t>(i)];
    return residual;
}

MasterIdentityReport master_identity_check(const GeneralizedVectorField& v, const Lagrangian& L) {
    if (!v.is_projectable())
        throw NotProjectable("the master identity needs L_v L to be a density");
    const BundleSpec* spec = L.spec;

    MasterIdentityReport out;
    Expr lie_density = lie_derivative_lagrangian(v, L).density();
    out.lhs = ContactForm::from_source(spec, euler_lagrange({spec, lie_density}));

    SourceForm delta = euler_lagrange(L);
    ContactForm delta_form = ContactForm::from_source(spec, delta);
    out.rhs = lie_derivative(v.contraction(), delta_form);

    // correction sum_{|L|>0} (-1)^{|L|} d_L((del^L_k v^i) delta_i 𝓁 dy^k) ^ omega
    out.correction = ContactForm(spec);
    int max_order = 0;
    for (int i = 0; i < spec->field_count(); ++i)
        max_order = std::max(max_order, v.eta(i).jet_order());
    ContactForm vol = ContactForm::volume(spec);
    for (int deg = 1; deg <= max_order; ++deg) {
        for (const MultiIndex& mi : MultiIndex::enumerate(spec->base_dim(), deg)) {
            ContactForm alpha(spec);
            for (int k = 0; k < spec->field_count(); ++k) {
                Expr coeff;
                for (int i = 0; i < spec->field_count(); ++i) {
                    Expr p = v.eta(i).partial(VarKey::jet_var(k, mi));
                    if (!p.is_zero()) coeff += p * delta.components[static_cast<std::size_t>(i)];
                }
                if (coeff.is_zero()) continue;
                // dy^k = theta^k + y^k_m dx^m
                ContactForm dy = ContactForm::theta(spec, k, MultiIndex(spec->base_dim()));
                for (int m = 0; m < spec->base_dim(); ++m)
                    dy += ContactForm::dx(spec, m) *
                          spec->jet(k, MultiIndex::unit(spec->base_dim(), m));
                alpha += dy * coeff;
            }
            if (alpha.is_zero()) continue;
            ContactForm term = alpha.total_derivative(mi).wedge(vol);
            out.correction += deg % 2 == 0 ? term : -term;
        }
    }

    out.difference = out.lhs - out.rhs - out.correction;
    if (!out.difference.is_zero() && !v.is_classical()) {
        // For component order >= 2 the relation is an identity between source
        // forms: the right side acquires differentiated contact factors that
        // are d_H-exact, so compare after projecting back to source shape.
        out.difference = out.lhs - (out.rhs + out.correction).rho();
    }
    out.holds = out.difference.is_zero();
    return out;
}

} // namespace jetvar
