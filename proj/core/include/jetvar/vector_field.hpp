#pragma once

#include "jetvar/contact_form.hpp"
#include "jetvar/expr.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace jetvar {

/// Generalized vector field v = v^l del_l + v^i del_i with components of any
/// finite jet order. Prolonged components v^i_L = d_L(v^i − y^i_m v^m) +
/// y^i_{m+L} v^m are generated on demand and cached. Logically immutable;
/// the caches are internally synchronized.
class GeneralizedVectorField {
public:
    GeneralizedVectorField(const BundleSpec* spec, std::vector<Expr> xi, std::vector<Expr> eta);

    static GeneralizedVectorField vertical(const BundleSpec* spec, std::vector<Expr> eta);

    const BundleSpec* bundle() const { return spec_; }
    const Expr& xi(int dir) const { return xi_[static_cast<std::size_t>(dir)]; }
    const Expr& eta(int field) const { return eta_[static_cast<std::size_t>(field)]; }

    /// Vertical components v̄^i = v^i − y^i_m v^m.
    Expr vertical_component(int field) const;

    /// Prolonged component v^i_L (the |L| = 0 case returns v^i).
    Expr prolonged(int field, const MultiIndex& mi) const;

    /// Pairing with the contact basis: <v, theta^i_L> = d_L(v̄^i).
    Expr theta_pairing(int field, const MultiIndex& mi) const;

    /// v^l depend on base coordinates only.
    bool is_projectable() const;
    /// v^l = v^l(x) and v^i = v^i(x,y): jet order zero components.
    bool is_classical() const;
    bool is_vertical() const;
    /// Max jet order over all components.
    int component_order() const;

    /// Horizontal/vertical split v = v_H + v_V: v_H acts as v^l d_l (its
    /// fibre components are y^i_m v^m), v_V is vertical with components v̄^i.
    std::pair<GeneralizedVectorField, GeneralizedVectorField> vertical_split() const;

    /// Prolonged action on a scalar.
    Expr apply(const Expr& e) const;

    /// Generator pairings for interior products.
    FormContraction contraction() const;
    FormContraction horizontal_contraction() const; // v_H: dx -> v^l, theta -> 0

private:
    struct Cache {
        std::mutex mutex;
        std::vector<Expr> vertical;
        std::vector<bool> vertical_ready;
        std::map<std::pair<int, MultiIndex>, Expr> pairings;
    };

    const BundleSpec* spec_;
    std::vector<Expr> xi_;
    std::vector<Expr> eta_;
    std::shared_ptr<Cache> cache_; // shared by copies; keyed by the components
};

} // namespace jetvar
