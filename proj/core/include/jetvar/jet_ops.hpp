#pragma once

#include "jetvar/expr.hpp"

#include <vector>

namespace jetvar {

/// Total derivative d_l = del_l + sum y^i_{l+L} del^L_i, with registered atom
/// rules chained through both the base and the jet dependencies.
Expr total_derivative(const Expr& e, int dir);

/// Iterated total derivative d_L; independent of the ordering of L.
Expr total_derivative(const Expr& e, const MultiIndex& mi);

/// Horizontal density L = 𝓁·ω of finite jet order.
struct Lagrangian {
    const BundleSpec* spec = nullptr;
    Expr density;

    Lagrangian() = default;
    Lagrangian(const BundleSpec* s, Expr d) : spec(s), density(std::move(d)) {}
    int order() const { return density.jet_order(); }
};

/// Euler-Lagrange components delta_i 𝓁, one per fibre field.
struct SourceForm {
    std::vector<Expr> components;

    bool is_zero() const {
        for (const auto& c : components)
            if (!c.is_zero()) return false;
        return true;
    }
};

/// delta_i 𝓁 = sum_{|L| <= r} (-1)^{|L|} d_L del^L_i 𝓁.
SourceForm euler_lagrange(const Lagrangian& L);

/// True iff the Euler-Lagrange form vanishes identically; on the trivial
/// charts supported here this is equivalent to L = d_H(xi).
bool is_variationally_trivial(const Lagrangian& L);

/// Reconstruct sigma^l with sum_l d_l sigma^l = h, exactly (post-verified).
/// n = 1 uses descending elimination of the highest jet variable; n >= 2 uses
/// the scaling homotopy on the jet-polynomial fragment plus coordinate-ray
/// integration of the pure-base remainder.
/// Throws NotExact when euler_lagrange(h) != 0, UnsupportedFragment otherwise
/// when the reconstruction falls outside the supported fragment.
std::vector<Expr> invert_total_divergence(const Expr& h, const BundleSpec& spec);

/// sum_l d_l sigma^l.
Expr total_divergence(const std::vector<Expr>& sigma, const BundleSpec& spec);

} // namespace jetvar
