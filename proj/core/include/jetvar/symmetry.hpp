#pragma once

#include "jetvar/variational_split.hpp"
#include "jetvar/vector_field.hpp"

#include <optional>

namespace jetvar {

/// Components J^l of an (n-1)-horizontal current J = J^l omega_l.
struct NoetherCurrent {
    std::vector<Expr> components;
};

/// Lie derivative of a Lagrangian along a generalized vector field, computed
/// by Cartan's formula and cross-checked against the horizontal/vertical
/// split form; InternalInconsistency on disagreement (bug trap).
ContactForm lie_derivative_lagrangian(const GeneralizedVectorField& v, const Lagrangian& L);

/// The three pieces of the first variational formula; their sum is verified
/// to equal the Lie derivative exactly before returning.
struct VariationalDecomposition {
    ContactForm euler_piece;    // v_V | deltaL
    ContactForm boundary_piece; // d_H(h0(v | Xi_L))
    ContactForm warp_piece;     // 𝓁 d_V(v_H | omega); zero for projectable v
    ContactForm total;          // the Lie derivative itself
};
VariationalDecomposition first_variational_formula(const GeneralizedVectorField& v,
                                                   const Lagrangian& L);

enum class SymmetryKind { Exact, Divergence, None };

struct SymmetryReport {
    SymmetryKind kind = SymmetryKind::None;
    Expr lie_density;                        // h with L_v L = h·omega
    std::optional<std::vector<Expr>> sigma;  // d_H sigma = h when reconstructed
    SourceForm residual;                     // delta(h); nonzero iff kind == None
};

/// Decide the characteristic equation delta(L_v L) = 0 for projectable v.
/// Exact symmetry when h = 0; divergence symmetry when delta(h) = 0, with
/// sigma reconstructed where the fragment allows; otherwise not a symmetry.
/// Throws NotProjectable for non-projectable fields.
SymmetryReport characteristic_check(const GeneralizedVectorField& v, const Lagrangian& L);

/// J = h0(v | Xi_L) − sigma. Callers are expected to have established the
/// symmetry verdict; sigma = nullptr means sigma = 0 (exact symmetries).
NoetherCurrent noether_current(const GeneralizedVectorField& v, const Lagrangian& L,
                               const std::vector<Expr>* sigma = nullptr);

/// Off-shell certificate: the normalized residual of
///   sum_l d_l J^l + sum_i v̄^i delta_i 𝓁 = 0,
/// zero exactly when the current is conserved on shell by the first
/// variational formula. A nonzero residual is a result, not an error.
Expr conservation_residual(const GeneralizedVectorField& v, const Lagrangian& L,
                           const NoetherCurrent& J);

/// Both sides of delta(L_v L) = L_v(deltaL) + correction, where the
/// correction is sum_{|L|>0} (-1)^{|L|} d_L((del^L_k v^i) delta_i 𝓁 dy^k) ^ omega
/// and vanishes for classical fields (the master identity). Requires
/// projectable v so that L_v L is a density.
struct MasterIdentityReport {
    ContactForm lhs;        // delta(L_v L)
    ContactForm rhs;        // L_v(deltaL)
    ContactForm correction; // zero on the classical branch
    ContactForm difference; // lhs − rhs − correction, normalized
    bool holds = false;
};
MasterIdentityReport master_identity_check(const GeneralizedVectorField& v, const Lagrangian& L);

} // namespace jetvar
