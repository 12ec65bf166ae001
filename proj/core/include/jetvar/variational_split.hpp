#pragma once

#include "jetvar/contact_form.hpp"

#include <map>
#include <tuple>

namespace jetvar {

/// Poincare-Cartan form of a Lagrangian with the gauge functions fixed to
/// zero: Xi_L = 𝓁·omega + sum F_i^{l;L} theta^i_L ^ omega_l. The coefficient
/// family is keyed by (field, direction, multi-index), |L| <= r-1.
struct PoincareCartanForm {
    ContactForm value;        // the whole Xi_L
    ContactForm contact_part; // Xi_L minus 𝓁·omega
    std::map<std::tuple<int, int, MultiIndex>, Expr> coefficients;
};

struct VariationalSplit {
    SourceForm source;       // delta_i 𝓁, computed as rho(dL)
    ContactForm source_form; // sum delta_i theta^i ^ omega
    PoincareCartanForm xi;
};

/// Split d(𝓁·omega) = deltaL − d_H(Xi_contact) with deltaL = rho(dL) and Xi
/// from the zero-gauge coefficient recursion. Both the splitting identity and
/// agreement with the direct Euler-Lagrange sum are verified exactly;
/// InternalInconsistency signals a bug, not a user error.
VariationalSplit first_variational_split(const Lagrangian& L);

} // namespace jetvar
