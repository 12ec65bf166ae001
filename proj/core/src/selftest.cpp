#include "jetvar/selftest.hpp"

#include "jetvar/errors.hpp"
#include "jetvar/symmetry.hpp"

#include <functional>
#include <random>

namespace jetvar::selftest {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational small_rational(Rng& rng) {
    static const int nums[] = {-3, -2, -1, 1, 2, 3};
    return Rational(nums[pick(rng, 0, 5)], pick(rng, 1, 3));
}

/// Shared bundle charts: n, m in {1,2}, plus one chart with a closed atom
/// registry (an exp-like generator w with d w/d q = q·w, d w/d u = u·w).
const std::shared_ptr<const BundleSpec>& chart(int n, int m) {
    static std::shared_ptr<const BundleSpec> cache[3][3];
    auto& slot = cache[n][m];
    if (!slot) {
        BaseSpec base{n == 1 ? std::vector<std::string>{"t"}
                             : std::vector<std::string>{"t", "x"}};
        std::vector<std::string> fields =
            m == 1 ? std::vector<std::string>{"q"} : std::vector<std::string>{"q", "u"};
        slot = BundleSpec::create(base, fields);
    }
    return slot;
}

const std::shared_ptr<const BundleSpec>& atom_chart() {
    static std::shared_ptr<const BundleSpec> slot = [] {
        AtomDecl w{"w", "exp-like generator", {{"q", "q*w"}, {"u", "u*w"}}};
        return BundleSpec::create(BaseSpec{{"t"}}, {"q", "u"}, {w});
    }();
    return slot;
}

std::vector<VarKey> variable_pool(const BundleSpec& spec, int max_order, bool with_atoms) {
    std::vector<VarKey> vars;
    for (int l = 0; l < spec.base_dim(); ++l) vars.push_back(VarKey::base(l));
    for (int i = 0; i < spec.field_count(); ++i)
        for (const MultiIndex& mi : MultiIndex::enumerate_up_to(spec.base_dim(), max_order))
            vars.push_back(VarKey::jet_var(i, mi));
    if (with_atoms)
        for (int a = 0; a < spec.atom_count(); ++a) vars.push_back(VarKey::atom(a));
    return vars;
}

Expr random_poly(Rng& rng, const BundleSpec& spec, int max_order, int max_terms, int max_factors,
                 bool with_atoms = false) {
    auto vars = variable_pool(spec, max_order, with_atoms);
    Expr out = spec.zero();
    int terms = pick(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Expr term = spec.constant(small_rational(rng));
        int nf = pick(rng, 0, max_factors);
        for (int j = 0; j < nf; ++j) {
            const VarKey& v = vars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(vars.size()) - 1))];
            term *= spec.var(v).pow(pick(rng, 1, 2));
        }
        out += term;
    }
    return out;
}

/// Polynomial in the base coordinates only.
Expr random_base_poly(Rng& rng, const BundleSpec& spec, int max_terms = 2) {
    Expr out = spec.zero();
    int terms = pick(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Expr term = spec.constant(small_rational(rng));
        int nf = pick(rng, 0, 2);
        for (int j = 0; j < nf; ++j) term *= spec.base_var(pick(rng, 0, spec.base_dim() - 1));
        out += term;
    }
    return out;
}

/// Jet-order-zero expression (base coordinates and plain fields).
Expr random_classical_component(Rng& rng, const BundleSpec& spec) {
    Expr out = spec.zero();
    int terms = pick(rng, 1, 2);
    for (int t = 0; t < terms; ++t) {
        Expr term = spec.constant(small_rational(rng));
        int nf = pick(rng, 0, 2);
        for (int j = 0; j < nf; ++j) {
            if (pick(rng, 0, 1) == 0)
                term *= spec.base_var(pick(rng, 0, spec.base_dim() - 1));
            else
                term *= spec.field_var(pick(rng, 0, spec.field_count() - 1));
        }
        out += term;
    }
    return out;
}

ContactForm random_form(Rng& rng, const BundleSpec& spec, int k, int s, int max_order) {
    ContactForm out(&spec);
    auto thetas_pool = [&] {
        std::vector<std::pair<int, MultiIndex>> pool;
        for (int i = 0; i < spec.field_count(); ++i)
            for (const MultiIndex& mi : MultiIndex::enumerate_up_to(spec.base_dim(), max_order))
                pool.emplace_back(i, mi);
        return pool;
    }();
    int terms = pick(rng, 1, 2);
    for (int t = 0; t < terms; ++t) {
        ContactForm mono = ContactForm::scalar(&spec, random_poly(rng, spec, max_order, 2, 2));
        for (int j = 0; j < k; ++j) {
            const auto& [field, mi] =
                thetas_pool[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(thetas_pool.size()) - 1))];
            mono = mono.wedge(ContactForm::theta(&spec, field, mi));
        }
        std::vector<int> dirs(static_cast<std::size_t>(spec.base_dim()));
        for (int l = 0; l < spec.base_dim(); ++l) dirs[static_cast<std::size_t>(l)] = l;
        for (int j = 0; j < s && !dirs.empty(); ++j) {
            int at = pick(rng, 0, static_cast<int>(dirs.size()) - 1);
            mono = mono.wedge(ContactForm::dx(&spec, dirs[static_cast<std::size_t>(at)]));
            dirs.erase(dirs.begin() + at);
        }
        out += mono;
    }
    return out;
}

GeneralizedVectorField random_field(Rng& rng, const BundleSpec& spec, int order,
                                    bool projectable, bool vertical) {
    std::vector<Expr> xi, eta;
    for (int l = 0; l < spec.base_dim(); ++l) {
        if (vertical)
            xi.push_back(spec.zero());
        else if (projectable)
            xi.push_back(random_base_poly(rng, spec));
        else
            xi.push_back(random_poly(rng, spec, order, 2, 2));
    }
    for (int i = 0; i < spec.field_count(); ++i) eta.push_back(random_poly(rng, spec, order, 2, 2));
    return {&spec, std::move(xi), std::move(eta)};
}

Lagrangian random_lagrangian(Rng& rng, const BundleSpec& spec, int order = 2) {
    return {&spec, random_poly(rng, spec, order, 2, 2)};
}

Report run_cases(const std::string& name, int cases,
                 const std::function<std::string(Rng&, int)>& one, std::uint64_t seed) {
    Report report{name, cases, ""};
    Rng rng(seed);
    for (int c = 0; c < cases; ++c) {
        std::string fail;
        try {
            fail = one(rng, c);
        } catch (const Error& e) {
            fail = std::string("exception: ") + e.what();
        }
        if (!fail.empty()) {
            report.failure = "case " + std::to_string(c) + ": " + fail;
            return report;
        }
    }
    return report;
}

const BundleSpec& cycle_chart(int c) {
    switch (c % 4) {
    case 0: return *chart(1, 1);
    case 1: return *chart(1, 2);
    case 2: return *chart(2, 1);
    default: return *chart(2, 2);
    }
}

std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int j = 1; j <= k; ++j)
        r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// multiindex

Report multiindex_monoid() {
    Report report{"multiindex.monoid", 0, ""};
    for (int n = 1; n <= 3; ++n) {
        auto all = MultiIndex::enumerate_up_to(n, 3);
        MultiIndex empty(n);
        for (const auto& a : all)
            for (const auto& b : all) {
                if (a.plus(b) != b.plus(a)) {
                    report.failure = "addition is not commutative";
                    return report;
                }
                for (const auto& c : all) {
                    ++report.cases;
                    if (a.plus(b).plus(c) != a.plus(b.plus(c))) {
                        report.failure = "addition is not associative";
                        return report;
                    }
                }
            }
        for (const auto& a : all)
            if (a.plus(empty) != a || empty.plus(a) != a) {
                report.failure = "empty index is not neutral";
                return report;
            }
    }
    return report;
}

Report multiindex_enumerate_counts() {
    Report report{"multiindex.enumerate_counts", 0, ""};
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 5; ++k) {
            ++report.cases;
            auto layer = MultiIndex::enumerate(n, k);
            if (layer.size() != binomial(n + k - 1, k)) {
                report.failure = "wrong count for n=" + std::to_string(n) + " k=" + std::to_string(k);
                return report;
            }
            for (std::size_t j = 1; j < layer.size(); ++j)
                if (!(layer[j - 1] < layer[j])) {
                    report.failure = "enumeration is not strictly increasing";
                    return report;
                }
        }
    return report;
}

Report multiindex_orderings_bound() {
    Report report{"multiindex.orderings_bound", 0, ""};
    for (int n = 1; n <= 3; ++n) {
        auto all = MultiIndex::enumerate_up_to(n, 4);
        for (const auto& a : all)
            for (const auto& b : all) {
                if (a.degree() + b.degree() > 4) continue;
                ++report.cases;
                if (a.plus(b).orderings() < a.orderings() * b.orderings()) {
                    report.failure = "orderings(L+S) < orderings(L)*orderings(S)";
                    return report;
                }
            }
    }
    return report;
}

// ---------------------------------------------------------------------------
// symexpr

Report expr_leibniz(std::uint64_t seed, int cases) {
    return run_cases("symexpr.leibniz", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = c % 5 == 4 ? *atom_chart() : cycle_chart(c);
        bool atoms = spec.atom_count() > 0;
        Expr a = random_poly(rng, spec, 2, 2, 2, atoms);
        Expr b = random_poly(rng, spec, 2, 2, 2, atoms);
        auto pool = variable_pool(spec, 2, false);
        VarKey v = pool[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(pool.size()) - 1))];
        Expr lhs = (a * b).partial(v);
        Expr rhs = a.partial(v) * b + a * b.partial(v);
        if (!(lhs - rhs).is_zero()) return "Leibniz rule failed for d/d" + spec.var_name(v);
        return "";
    }, seed);
}

Report expr_partials_commute(std::uint64_t seed, int cases) {
    return run_cases("symexpr.partials_commute", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = c % 5 == 4 ? *atom_chart() : cycle_chart(c);
        bool atoms = spec.atom_count() > 0;
        Expr e = random_poly(rng, spec, 2, 2, 3, atoms);
        auto pool = variable_pool(spec, 2, false);
        VarKey v = pool[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(pool.size()) - 1))];
        VarKey w = pool[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(pool.size()) - 1))];
        if (!(e.partial(v).partial(w) - e.partial(w).partial(v)).is_zero())
            return "mixed partials differ";
        return "";
    }, seed);
}

Report expr_print_roundtrip(std::uint64_t seed, int cases) {
    return run_cases("symexpr.print_roundtrip", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = c % 5 == 4 ? *atom_chart() : cycle_chart(c);
        bool atoms = spec.atom_count() > 0;
        Expr e = random_poly(rng, spec, 2, 2, 2, atoms);
        if (c % 2 == 1) {
            Expr d = random_poly(rng, spec, 1, 2, 2, atoms);
            if (!d.is_zero()) e = e / d;
        }
        Expr back = spec.parse(e.str());
        if (!(back - e).is_zero()) return "parse(print(e)) != e for " + e.str();
        return "";
    }, seed);
}

Report expr_zero_oracle(std::uint64_t seed, int cases) {
    return run_cases("symexpr.zero_oracle", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Expr e;
        if (c % 4 == 0) {
            // an expression that is zero by an algebraic identity
            Expr a = random_poly(rng, spec, 1, 2, 2);
            Expr b = random_poly(rng, spec, 1, 2, 2);
            Expr s = a + b;
            e = s * s - a * a - spec.constant(2) * a * b - b * b;
        } else {
            e = random_poly(rng, spec, 1, 3, 3);
        }
        bool claimed_zero = e.is_zero();
        // oracle: exact evaluation at 20 random rational points
        bool all_vanish = true;
        for (int p = 0; p < 20; ++p) {
            std::map<VarKey, Rational> point;
            for (const VarKey& v : e.variables())
                point[v] = Rational(pick(rng, -50, 50), pick(rng, 1, 7));
            if (e.eval(point) != 0) {
                all_vanish = false;
                break;
            }
        }
        if (claimed_zero != all_vanish)
            return std::string("is_zero disagrees with rational-point evaluation: ") + e.str();
        return "";
    }, seed);
}

// ---------------------------------------------------------------------------
// jetops

Report total_derivatives_commute(std::uint64_t seed, int cases) {
    return run_cases("jetops.total_derivatives_commute", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = c % 2 == 0 ? *chart(2, 1) : *chart(2, 2);
        Expr e = random_poly(rng, spec, 2, 2, 3);
        Expr ab = total_derivative(total_derivative(e, 0), 1);
        Expr ba = total_derivative(total_derivative(e, 1), 0);
        if (!(ab - ba).is_zero()) return "d_t d_x != d_x d_t";
        return "";
    }, seed);
}

Report delta_after_dh(std::uint64_t seed, int cases) {
    return run_cases("jetops.delta_after_dh", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        std::vector<Expr> sigma;
        for (int l = 0; l < spec.base_dim(); ++l) sigma.push_back(random_poly(rng, spec, 2, 2, 2));
        Expr h = total_divergence(sigma, spec);
        if (!euler_lagrange({&spec, h}).is_zero()) return "delta(d_H sigma) != 0";
        return "";
    }, seed);
}

Report euler_lagrange_linearity(std::uint64_t seed, int cases) {
    return run_cases("jetops.euler_lagrange_linearity", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Lagrangian L1 = random_lagrangian(rng, spec);
        Lagrangian L2 = random_lagrangian(rng, spec);
        Rational r = small_rational(rng);
        Lagrangian sum{&spec, L1.density + Expr::from_rational(r) * L2.density};
        SourceForm a = euler_lagrange(sum);
        SourceForm b1 = euler_lagrange(L1);
        SourceForm b2 = euler_lagrange(L2);
        for (int i = 0; i < spec.field_count(); ++i) {
            Expr want = b1.components[static_cast<std::size_t>(i)] +
                        Expr::from_rational(r) * b2.components[static_cast<std::size_t>(i)];
            if (!(a.components[static_cast<std::size_t>(i)] - want).is_zero())
                return "Euler-Lagrange operator is not linear";
        }
        return "";
    }, seed);
}

Report triviality_roundtrip_mechanics(std::uint64_t seed, int cases) {
    return run_cases("jetops.triviality_roundtrip_mechanics", cases,
                     [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = c % 2 == 0 ? *chart(1, 1) : *chart(1, 2);
        Expr sigma = random_poly(rng, spec, 2, 2, 2);
        if (c % 3 == 0) {
            // exercise the rational fragment with pole-free denominators
            Expr d;
            switch (c % 12) {
            case 0: d = spec.constant(1) + spec.field_var(0).pow(2); break;
            case 3: d = spec.constant(1) + spec.jet(0, MultiIndex(1, {0})).pow(2); break;
            case 6:
                d = (spec.constant(1) + spec.field_var(0).pow(2)).pow(2);
                break;
            default:
                d = spec.constant(2) + spec.field_var(0).pow(2) +
                    spec.jet(0, MultiIndex(1, {0})).pow(2);
                break;
            }
            sigma = sigma + random_poly(rng, spec, 1, 1, 1) / d;
        }
        Expr h = total_derivative(sigma, 0);
        if (!is_variationally_trivial({&spec, h})) return "d_t sigma reported nontrivial";
        std::vector<Expr> back = invert_total_divergence(h, spec);
        if (!(total_derivative(back[0], 0) - h).is_zero()) return "round trip failed";
        return "";
    }, seed);
}

Report triviality_roundtrip_field(std::uint64_t seed, int cases) {
    return run_cases("jetops.triviality_roundtrip_field", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = c % 2 == 0 ? *chart(2, 1) : *chart(2, 2);
        std::vector<Expr> sigma;
        for (int l = 0; l < spec.base_dim(); ++l) sigma.push_back(random_poly(rng, spec, 2, 2, 2));
        Expr h = total_divergence(sigma, spec);
        if (!is_variationally_trivial({&spec, h})) return "d_H sigma reported nontrivial";
        std::vector<Expr> back = invert_total_divergence(h, spec);
        if (!(total_divergence(back, spec) - h).is_zero()) return "round trip failed";
        return "";
    }, seed);
}

// ---------------------------------------------------------------------------
// contactforms

Report dh_squared(std::uint64_t seed, int cases) {
    return run_cases("contact.dh_squared", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        ContactForm phi = random_form(rng, spec, pick(rng, 0, 2), pick(rng, 0, spec.base_dim()), 2);
        if (!phi.d_H().d_H().is_zero()) return "d_H^2 != 0";
        return "";
    }, seed);
}

Report dv_squared(std::uint64_t seed, int cases) {
    return run_cases("contact.dv_squared", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        ContactForm phi = random_form(rng, spec, pick(rng, 0, 2), pick(rng, 0, spec.base_dim()), 2);
        if (!phi.d_V().d_V().is_zero()) return "d_V^2 != 0";
        return "";
    }, seed);
}

Report dh_dv_anticommute(std::uint64_t seed, int cases) {
    return run_cases("contact.dh_dv_anticommute", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        ContactForm phi = random_form(rng, spec, pick(rng, 0, 2), pick(rng, 0, spec.base_dim()), 2);
        if (!(phi.d_H().d_V() + phi.d_V().d_H()).is_zero()) return "d_H d_V + d_V d_H != 0";
        return "";
    }, seed);
}

Report h0_commutes_with_d(std::uint64_t seed, int cases) {
    return run_cases("contact.h0_commutes_with_d", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        ContactForm phi = random_form(rng, spec, pick(rng, 0, 2), pick(rng, 0, spec.base_dim()), 2);
        if (!(phi.d().h0() - phi.h0().d_H()).is_zero()) return "h0∘d != d_H∘h0";
        return "";
    }, seed);
}

Report rho_idempotent(std::uint64_t seed, int cases) {
    return run_cases("contact.rho_idempotent", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        int k = pick(rng, 1, 2);
        ContactForm phi = random_form(rng, spec, k, spec.base_dim(), 2);
        ContactForm once = phi.rho();
        if (!(once.rho() - once).is_zero()) return "rho is not idempotent";
        // source shape (every contact factor undifferentiated) holds at k = 1
        if (k == 1)
            for (const auto& [key, coeff] : once.terms())
                for (const auto& [field, mi] : key.thetas)
                    if (!mi.empty()) return "rho image has differentiated contact factors";
        return "";
    }, seed);
}

Report rho_annihilates_dh(std::uint64_t seed, int cases) {
    return run_cases("contact.rho_annihilates_dh", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        ContactForm xi = random_form(rng, spec, 1, spec.base_dim() - 1, 2);
        if (!xi.d_H().rho().is_zero()) return "rho(d_H xi) != 0";
        return "";
    }, seed);
}

Report rho_d_rho(std::uint64_t seed, int cases) {
    return run_cases("contact.rho_d_rho", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        ContactForm phi = random_form(rng, spec, 1, spec.base_dim(), 2);
        if (!(phi.rho().d().rho() - phi.d().rho()).is_zero())
            return "rho∘d∘rho != rho∘d on a (1,n)-form";
        return "";
    }, seed);
}

Report delta_nilpotent_fragment(std::uint64_t seed, int cases) {
    return run_cases("contact.delta_nilpotent_fragment", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Lagrangian L = random_lagrangian(rng, spec);
        ContactForm first = ContactForm::from_density(&spec, L.density).d().rho();
        ContactForm second = first.d().rho();
        if (!second.bidegree_part(1, spec.base_dim()).is_zero())
            return "delta(delta L) has a nonzero source component";
        return "";
    }, seed);
}

Report dual_path_euler_lagrange(std::uint64_t seed, int cases) {
    return run_cases("contact.dual_path_euler_lagrange", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Lagrangian L = random_lagrangian(rng, spec);
        VariationalSplit split = first_variational_split(L); // self-checking
        SourceForm direct = euler_lagrange(L);
        for (int i = 0; i < spec.field_count(); ++i)
            if (!(split.source.components[static_cast<std::size_t>(i)] -
                  direct.components[static_cast<std::size_t>(i)]).is_zero())
                return "rho(dL) and the direct sum disagree";
        return "";
    }, seed);
}

// ---------------------------------------------------------------------------
// symmetry

Report prolongation_consistency(std::uint64_t seed, int cases) {
    return run_cases("symmetry.prolongation_consistency", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        GeneralizedVectorField v = random_field(rng, spec, 1, c % 2 == 0, false);
        int field = pick(rng, 0, spec.field_count() - 1);
        auto layer = MultiIndex::enumerate_up_to(spec.base_dim(), 2);
        const MultiIndex& mi = layer[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(layer.size()) - 1))];
        int dir = pick(rng, 0, spec.base_dim() - 1);
        Expr recursive = total_derivative(v.theta_pairing(field, mi), dir);
        if (!(v.theta_pairing(field, mi.plus(dir)) - recursive).is_zero())
            return "prolonged components do not satisfy the defining recursion";
        return "";
    }, seed);
}

Report vertical_interior_relation(std::uint64_t seed, int cases) {
    return run_cases("symmetry.vertical_interior_relation", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        GeneralizedVectorField v = random_field(rng, spec, 1, false, true);
        ContactForm phi = random_form(rng, spec, pick(rng, 0, 2), pick(rng, 0, spec.base_dim() - 1), 1);
        ContactForm lhs = phi.d_H().interior(v.contraction());
        ContactForm rhs = phi.interior(v.contraction()).d_H();
        if (!(lhs + rhs).is_zero()) return "v | d_H phi != -d_H(v | phi) for vertical v";
        return "";
    }, seed);
}

Report variational_formula_closure(std::uint64_t seed, int cases) {
    return run_cases("symmetry.variational_formula_closure", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Lagrangian L = random_lagrangian(rng, spec);
        // cycle through non-projectable, projectable generalized, and vertical
        GeneralizedVectorField v = c % 3 == 0 ? random_field(rng, spec, 1, false, false)
                                  : c % 3 == 1 ? random_field(rng, spec, 2, true, false)
                                               : random_field(rng, spec, 2, false, true);
        VariationalDecomposition dec = first_variational_formula(v, L); // self-checking
        if (!(dec.euler_piece + dec.boundary_piece + dec.warp_piece - dec.total).is_zero())
            return "pieces do not sum to the Lie derivative";
        if (c % 3 != 0 && !dec.warp_piece.is_zero())
            return "warp piece should vanish for projectable fields";
        return "";
    }, seed);
}

Report vertical_equivalence(std::uint64_t seed, int cases) {
    return run_cases("symmetry.vertical_equivalence", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Lagrangian L;
        GeneralizedVectorField v = [&]() -> GeneralizedVectorField {
            if (c % 2 == 0) {
                // autonomous Lagrangian, time translation
                Expr density = spec.zero();
                for (int t = 0; t < 2; ++t) {
                    Expr term = spec.constant(small_rational(rng));
                    for (int j = 0; j < 2; ++j) {
                        auto mis = MultiIndex::enumerate_up_to(spec.base_dim(), 1);
                        term *= spec.jet(pick(rng, 0, spec.field_count() - 1),
                                         mis[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(mis.size()) - 1))]);
                    }
                    density += term;
                }
                L = Lagrangian{&spec, density};
                std::vector<Expr> xi(static_cast<std::size_t>(spec.base_dim()), spec.zero());
                xi[0] = spec.constant(1);
                std::vector<Expr> eta(static_cast<std::size_t>(spec.field_count()), spec.zero());
                return {&spec, std::move(xi), std::move(eta)};
            }
            // variationally trivial Lagrangian: every projectable field is a
            // divergence symmetry
            std::vector<Expr> sigma;
            for (int l = 0; l < spec.base_dim(); ++l)
                sigma.push_back(random_poly(rng, spec, 1, 2, 2));
            L = Lagrangian{&spec, total_divergence(sigma, spec)};
            return random_field(rng, spec, 1, true, false);
        }();

        auto [v_h, v_v] = v.vertical_split();
        SymmetryReport r1 = characteristic_check(v, L);
        SymmetryReport r2 = characteristic_check(v_v, L);
        bool sym1 = r1.kind != SymmetryKind::None;
        bool sym2 = r2.kind != SymmetryKind::None;
        if (sym1 != sym2) return "v and v_V disagree about being a symmetry";
        if (!sym1) return "generated case unexpectedly not a symmetry";
        if (r1.sigma && r2.sigma) {
            NoetherCurrent j1 = noether_current(v, L, &*r1.sigma);
            NoetherCurrent j2 = noether_current(v_v, L, &*r2.sigma);
            if (!conservation_residual(v, L, j1).is_zero())
                return "current of v fails verification";
            if (!conservation_residual(v_v, L, j2).is_zero())
                return "current of v_V fails verification";
        }
        return "";
    }, seed);
}

Report master_identity_classical(std::uint64_t seed, int cases) {
    return run_cases("symmetry.master_identity_classical", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Lagrangian L = random_lagrangian(rng, spec);
        std::vector<Expr> xi, eta;
        for (int l = 0; l < spec.base_dim(); ++l) xi.push_back(random_base_poly(rng, spec));
        for (int i = 0; i < spec.field_count(); ++i)
            eta.push_back(random_classical_component(rng, spec));
        GeneralizedVectorField u(&spec, std::move(xi), std::move(eta));
        MasterIdentityReport report = master_identity_check(u, L);
        if (!report.correction.is_zero()) return "classical field produced a correction term";
        if (!report.holds) return "master identity failed";
        return "";
    }, seed);
}

Report local_relation_generalized(std::uint64_t seed, int cases) {
    return run_cases("symmetry.local_relation_generalized", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Lagrangian L = random_lagrangian(rng, spec);
        GeneralizedVectorField v = random_field(rng, spec, pick(rng, 1, 2), false, true);
        MasterIdentityReport report = master_identity_check(v, L);
        if (!report.holds) return "local relation failed for a vertical generalized field";
        return "";
    }, seed);
}

// ---------------------------------------------------------------------------
// falsifiability

Report falsifiability_currents(std::uint64_t seed, int cases) {
    return run_cases("falsifiability.currents", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        // a valid conserved current: time translation of an autonomous density
        Expr density = spec.jet(0, MultiIndex::unit(spec.base_dim(), 0)).pow(2) *
                       Expr::from_rational(Rational(1, 2));
        for (int i = 0; i < spec.field_count(); ++i)
            density -= spec.field_var(i).pow(2) * Expr::from_rational(Rational(1, 2));
        Lagrangian L{&spec, density};
        std::vector<Expr> xi(static_cast<std::size_t>(spec.base_dim()), spec.zero());
        xi[0] = spec.constant(1);
        GeneralizedVectorField v(&spec, xi,
                                 std::vector<Expr>(static_cast<std::size_t>(spec.field_count()),
                                                   spec.zero()));
        NoetherCurrent J = noether_current(v, L);
        if (!conservation_residual(v, L, J).is_zero()) return "baseline current not conserved";

        // perturb by p with d_H p != 0: the residual must pick it up exactly
        std::vector<Expr> p;
        for (int attempt = 0;; ++attempt) {
            p.clear();
            for (int l = 0; l < spec.base_dim(); ++l) p.push_back(random_poly(rng, spec, 1, 1, 2));
            if (!total_divergence(p, spec).is_zero()) break;
            if (attempt > 50) return "could not draw a perturbation with nonzero divergence";
        }
        NoetherCurrent corrupted = J;
        for (std::size_t l = 0; l < p.size(); ++l) corrupted.components[l] += p[l];
        if (conservation_residual(v, L, corrupted).is_zero())
            return "corrupted current passed verification";
        return "";
    }, seed);
}

Report falsifiability_symmetries(std::uint64_t seed, int cases) {
    return run_cases("falsifiability.symmetries", cases, [](Rng& rng, int c) -> std::string {
        const BundleSpec& spec = cycle_chart(c);
        Expr density = spec.jet(0, MultiIndex::unit(spec.base_dim(), 0)).pow(2) *
                       Expr::from_rational(Rational(1, 2));
        density -= spec.field_var(0).pow(2) * Expr::from_rational(Rational(1, 2));
        Lagrangian L{&spec, density};
        std::vector<Expr> xi(static_cast<std::size_t>(spec.base_dim()), spec.zero());
        xi[0] = spec.constant(1);
        GeneralizedVectorField v(&spec, xi,
                                 std::vector<Expr>(static_cast<std::size_t>(spec.field_count()),
                                                   spec.zero()));
        if (characteristic_check(v, L).kind != SymmetryKind::Exact)
            return "baseline field is not an exact symmetry";

        // vertical perturbation that is itself no symmetry of L
        std::vector<Expr> w_eta;
        for (int attempt = 0;; ++attempt) {
            w_eta.clear();
            for (int i = 0; i < spec.field_count(); ++i)
                w_eta.push_back(random_poly(rng, spec, 1, 1, 2));
            GeneralizedVectorField w = GeneralizedVectorField::vertical(&spec, w_eta);
            if (characteristic_check(w, L).kind == SymmetryKind::None) break;
            if (attempt > 50) return "could not draw a symmetry-breaking perturbation";
        }
        std::vector<Expr> eta = w_eta;
        GeneralizedVectorField corrupted(&spec, xi, std::move(eta));
        SymmetryReport report = characteristic_check(corrupted, L);
        if (report.kind != SymmetryKind::None) return "corrupted field passed the check";
        if (report.residual.is_zero()) return "verdict carries a zero residual";
        return "";
    }, seed);
}

std::vector<Report> run_all(std::uint64_t seed) {
    std::vector<Report> out;
    out.push_back(multiindex_monoid());
    out.push_back(multiindex_enumerate_counts());
    out.push_back(multiindex_orderings_bound());
    out.push_back(expr_leibniz(seed + 1, 60));
    out.push_back(expr_partials_commute(seed + 2, 60));
    out.push_back(expr_print_roundtrip(seed + 3, 60));
    out.push_back(expr_zero_oracle(seed + 4, 100));
    out.push_back(total_derivatives_commute(seed + 5, 40));
    out.push_back(delta_after_dh(seed + 6, 40));
    out.push_back(euler_lagrange_linearity(seed + 7, 30));
    out.push_back(triviality_roundtrip_mechanics(seed + 8, 30));
    out.push_back(triviality_roundtrip_field(seed + 9, 30));
    out.push_back(dh_squared(seed + 10, 40));
    out.push_back(dv_squared(seed + 11, 40));
    out.push_back(dh_dv_anticommute(seed + 12, 40));
    out.push_back(h0_commutes_with_d(seed + 13, 40));
    out.push_back(rho_idempotent(seed + 14, 40));
    out.push_back(rho_annihilates_dh(seed + 15, 40));
    out.push_back(rho_d_rho(seed + 26, 20));
    out.push_back(delta_nilpotent_fragment(seed + 16, 20));
    out.push_back(dual_path_euler_lagrange(seed + 17, 20));
    out.push_back(prolongation_consistency(seed + 18, 40));
    out.push_back(vertical_interior_relation(seed + 19, 40));
    out.push_back(variational_formula_closure(seed + 20, 20));
    out.push_back(vertical_equivalence(seed + 21, 16));
    out.push_back(master_identity_classical(seed + 22, 16));
    out.push_back(local_relation_generalized(seed + 23, 16));
    out.push_back(falsifiability_currents(seed + 24, 30));
    out.push_back(falsifiability_symmetries(seed + 25, 30));
    return out;
}

} // namespace jetvar::selftest
