#include "jetvar/vector_field.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

GeneralizedVectorField::GeneralizedVectorField(const BundleSpec* spec, std::vector<Expr> xi,
                                               std::vector<Expr> eta)
    : spec_(spec), xi_(std::move(xi)), eta_(std::move(eta)), cache_(std::make_shared<Cache>()) {
    if (static_cast<int>(xi_.size()) != spec->base_dim() ||
        static_cast<int>(eta_.size()) != spec->field_count())
        throw DimensionMismatch("vector field components do not match the bundle");
    cache_->vertical.resize(eta_.size());
    cache_->vertical_ready.assign(eta_.size(), false);
}

GeneralizedVectorField GeneralizedVectorField::vertical(const BundleSpec* spec,
                                                        std::vector<Expr> eta) {
    std::vector<Expr> xi(static_cast<std::size_t>(spec->base_dim()), spec->zero());
    return {spec, std::move(xi), std::move(eta)};
}

Expr GeneralizedVectorField::vertical_component(int field) const {
    std::lock_guard lock(cache_->mutex);
    auto idx = static_cast<std::size_t>(field);
    if (!cache_->vertical_ready[idx]) {
        Expr v = eta_[idx];
        for (int m = 0; m < spec_->base_dim(); ++m)
            v -= spec_->jet(field, MultiIndex::unit(spec_->base_dim(), m)) * xi_[static_cast<std::size_t>(m)];
        cache_->vertical[idx] = std::move(v);
        cache_->vertical_ready[idx] = true;
    }
    return cache_->vertical[idx];
}

Expr GeneralizedVectorField::theta_pairing(int field, const MultiIndex& mi) const {
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->pairings.find({field, mi});
        if (it != cache_->pairings.end()) return it->second;
    }
    Expr value = total_derivative(vertical_component(field), mi);
    std::lock_guard lock(cache_->mutex);
    return cache_->pairings.emplace(std::pair{field, mi}, std::move(value)).first->second;
}

Expr GeneralizedVectorField::prolonged(int field, const MultiIndex& mi) const {
    if (mi.empty()) return eta_[static_cast<std::size_t>(field)];
    Expr out = theta_pairing(field, mi);
    for (int m = 0; m < spec_->base_dim(); ++m)
        out += spec_->jet(field, mi.plus(m)) * xi_[static_cast<std::size_t>(m)];
    return out;
}

bool GeneralizedVectorField::is_projectable() const {
    for (const Expr& x : xi_)
        if (!x.base_only()) return false;
    return true;
}

bool GeneralizedVectorField::is_classical() const {
    if (!is_projectable()) return false;
    for (const Expr& e : eta_)
        if (e.jet_order() > 0) return false;
    return true;
}

bool GeneralizedVectorField::is_vertical() const {
    for (const Expr& x : xi_)
        if (!x.is_zero()) return false;
    return true;
}

int GeneralizedVectorField::component_order() const {
    int k = 0;
    for (const Expr& x : xi_) k = std::max(k, x.jet_order());
    for (const Expr& e : eta_) k = std::max(k, e.jet_order());
    return k;
}

std::pair<GeneralizedVectorField, GeneralizedVectorField>
GeneralizedVectorField::vertical_split() const {
    std::vector<Expr> eta_h(eta_.size());
    std::vector<Expr> eta_v(eta_.size());
    for (int i = 0; i < spec_->field_count(); ++i) {
        Expr lift;
        for (int m = 0; m < spec_->base_dim(); ++m)
            lift += spec_->jet(i, MultiIndex::unit(spec_->base_dim(), m)) *
                    xi_[static_cast<std::size_t>(m)];
        eta_h[static_cast<std::size_t>(i)] = lift;
        eta_v[static_cast<std::size_t>(i)] = vertical_component(i);
    }
    GeneralizedVectorField horizontal(spec_, xi_, std::move(eta_h));
    GeneralizedVectorField vertical_part = vertical(spec_, std::move(eta_v));
    return {std::move(horizontal), std::move(vertical_part)};
}

Expr GeneralizedVectorField::apply(const Expr& e) const {
    Expr out;
    for (const VarKey& v : e.variables()) {
        Expr df = e.partial_formal(v);
        if (df.is_zero()) continue;
        switch (v.kind) {
        case VarKind::Base:
            out += df * xi_[static_cast<std::size_t>(v.id)];
            break;
        case VarKind::Jet:
            out += df * prolonged(v.id, v.jet);
            break;
        case VarKind::Atom: {
            Expr image;
            for (int m = 0; m < spec_->base_dim(); ++m) {
                const Expr& rule = spec_->atom_rule(v.id, VarKey::base(m));
                if (!rule.is_zero()) image += xi_[static_cast<std::size_t>(m)] * rule;
            }
            for (const VarKey& dep : spec_->atom(v.id).jet_deps)
                image += prolonged(dep.id, dep.jet) * spec_->atom_rule(v.id, dep);
            if (!image.is_zero()) out += df * image;
            break;
        }
        }
    }
    return out;
}

FormContraction GeneralizedVectorField::contraction() const {
    return {
        [this](int dir) { return xi(dir); },
        [this](int field, const MultiIndex& mi) { return theta_pairing(field, mi); },
    };
}

FormContraction GeneralizedVectorField::horizontal_contraction() const {
    return {
        [this](int dir) { return xi(dir); },
        [this](int, const MultiIndex&) { return Expr{}; },
    };
}

} // namespace jetvar
