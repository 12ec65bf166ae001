#include "jetvar/variational_split.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

VariationalSplit first_variational_split(const Lagrangian& L) {
    const BundleSpec* spec = L.spec;
    const int n = spec->base_dim();
    const int r = L.order();

    ContactForm Lform = ContactForm::from_density(spec, L.density);
    ContactForm dL = Lform.d();

    VariationalSplit out;
    out.source_form = dL.rho();
    out.source = out.source_form.as_source_form();

    SourceForm direct = euler_lagrange(L);
    for (int i = 0; i < spec->field_count(); ++i)
        if (!(out.source.components[static_cast<std::size_t>(i)] -
              direct.components[static_cast<std::size_t>(i)])
                 .is_zero())
            throw InternalInconsistency(
                "rho(dL) disagrees with the direct Euler-Lagrange sum");

    // zero-gauge coefficient recursion, downward from the top order:
    //   S_i^T = del_i^T 𝓁 − sum_l d_l F_i^{l;T}
    //   F_i^{l;T−l} = (T_l/|T|)·S_i^T
    auto& F = out.xi.coefficients;
    for (int s = r; s >= 1; --s) {
        for (int i = 0; i < spec->field_count(); ++i) {
            for (const MultiIndex& sigma : MultiIndex::enumerate(n, s)) {
                Expr S = L.density.partial(VarKey::jet_var(i, sigma));
                for (int l = 0; l < n; ++l) {
                    auto it = F.find({i, l, sigma});
                    if (it != F.end()) S -= total_derivative(it->second, l);
                }
                if (S.is_zero()) continue;
                for (int l = 0; l < n; ++l) {
                    if (sigma.count(l) == 0) continue;
                    Expr weight = Expr::from_rational(Rational(sigma.count(l), s));
                    F[{i, l, *sigma.minus(l)}] = weight * S;
                }
            }
        }
    }

    ContactForm xi_contact(spec);
    for (const auto& [key, coeff] : F) {
        const auto& [i, l, mi] = key;
        xi_contact += ContactForm::theta(spec, i, mi)
                          .wedge(ContactForm::volume_omitting(spec, l)) *
                      coeff;
    }
    out.xi.contact_part = xi_contact;
    out.xi.value = Lform + xi_contact;

    if (!(dL - out.source_form + xi_contact.d_H()).is_zero())
        throw InternalInconsistency("dL != deltaL - d_H(Xi) for the zero-gauge choice");

    return out;
}

} // namespace jetvar
