// Acceptance suite: one line per criterion, all checks exact symbolic zeros.
// Returns nonzero if any criterion fails.

#include "jetvar/model.hpp"
#include "jetvar/selftest.hpp"
#include "jetvar/symmetry.hpp"

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace jetvar;

namespace {

constexpr std::uint64_t kSeed = 424242;

struct Criterion {
    std::string label;
    std::function<std::string()> run; // empty string = pass
};

std::string join_failures(const std::vector<selftest::Report>& reports) {
    for (const auto& r : reports)
        if (!r.ok()) return r.name + ": " + r.failure;
    return "";
}

std::string criterion_operator_identities() {
    return join_failures({
        selftest::dh_squared(kSeed + 1, 200),
        selftest::dv_squared(kSeed + 2, 200),
        selftest::dh_dv_anticommute(kSeed + 3, 200),
        selftest::h0_commutes_with_d(kSeed + 4, 200),
        selftest::rho_idempotent(kSeed + 5, 200),
        selftest::rho_annihilates_dh(kSeed + 6, 200),
        selftest::delta_after_dh(kSeed + 7, 200),
    });
}

std::string criterion_dual_path() {
    return join_failures({selftest::dual_path_euler_lagrange(kSeed + 8, 100)});
}

std::string criterion_first_variational_formula() {
    return join_failures({selftest::variational_formula_closure(kSeed + 9, 100)});
}

Model load_model(const char* name) {
    return Model::load(std::string(JETVAR_MODELS_DIR) + "/" + name + ".model");
}

std::string check(bool ok, const std::string& what) { return ok ? "" : what; }

std::string criterion_corpus() {
    // harmonic oscillator: exact time symmetry, energy current, residual 0
    {
        Model m = load_model("harmonic_oscillator");
        const BundleSpec* spec = m.bundle.get();
        GeneralizedVectorField v = m.find_symmetry("time")->field(spec);
        SymmetryReport r = characteristic_check(v, m.lagrangian);
        if (auto s = check(r.kind == SymmetryKind::Exact, "oscillator time not exact"); !s.empty())
            return s;
        NoetherCurrent J = noether_current(v, m.lagrangian);
        if (auto s = check((J.components[0] - spec->parse("-(1/2*q_t^2 + 1/2*q^2)")).is_zero(),
                           "oscillator energy current wrong");
            !s.empty())
            return s;
        if (auto s = check(conservation_residual(v, m.lagrangian, J).is_zero(),
                           "oscillator residual nonzero");
            !s.empty())
            return s;
    }
    // free particle boost: divergence symmetry, sigma = q, J = t q_t - q
    {
        Model m = load_model("free_particle");
        const BundleSpec* spec = m.bundle.get();
        GeneralizedVectorField v = m.find_symmetry("boost")->field(spec);
        SymmetryReport r = characteristic_check(v, m.lagrangian);
        if (auto s = check(r.kind == SymmetryKind::Divergence, "boost not a divergence symmetry");
            !s.empty())
            return s;
        if (auto s = check(r.sigma && ((*r.sigma)[0] - spec->field_var(0)).is_zero(),
                           "boost sigma != q");
            !s.empty())
            return s;
        NoetherCurrent J = noether_current(v, m.lagrangian, &*r.sigma);
        if (auto s = check((J.components[0] - spec->parse("t*q_t - q")).is_zero(),
                           "boost charge wrong");
            !s.empty())
            return s;
        if (auto s = check(conservation_residual(v, m.lagrangian, J).is_zero(),
                           "boost residual nonzero");
            !s.empty())
            return s;
    }
    // Kepler: rotation gives the angular momentum, Runge-Lenz verifies off shell
    {
        Model m = load_model("kepler_2d");
        const BundleSpec* spec = m.bundle.get();
        GeneralizedVectorField rot = m.find_symmetry("rotation")->field(spec);
        if (auto s = check(characteristic_check(rot, m.lagrangian).kind == SymmetryKind::Exact,
                           "Kepler rotation not exact");
            !s.empty())
            return s;
        NoetherCurrent L = noether_current(rot, m.lagrangian);
        if (auto s = check((L.components[0] - spec->parse("q1*q2_t - q2*q1_t")).is_zero(),
                           "angular momentum wrong");
            !s.empty())
            return s;
        if (auto s = check(conservation_residual(rot, m.lagrangian, L).is_zero(),
                           "angular momentum residual nonzero");
            !s.empty())
            return s;

        for (const char* name : {"runge_lenz_1", "runge_lenz_2"}) {
            const SymmetryDecl* decl = m.find_symmetry(name);
            GeneralizedVectorField v = decl->field(spec);
            SymmetryReport r = characteristic_check(v, m.lagrangian);
            if (auto s = check(r.kind == SymmetryKind::Divergence,
                               std::string(name) + " not a divergence symmetry");
                !s.empty())
                return s;
            if (auto s = check((total_divergence(*decl->sigma, *spec) - r.lie_density).is_zero(),
                               std::string(name) + " declared sigma does not match L_v L");
                !s.empty())
                return s;
            NoetherCurrent J = noether_current(v, m.lagrangian, &*decl->sigma);
            if (auto s = check(conservation_residual(v, m.lagrangian, J).is_zero(),
                               std::string(name) + " off-shell residual nonzero");
                !s.empty())
                return s;
        }
    }
    // potential KdV: the Euler-Lagrange form and the third-order flow symmetry
    {
        Model m = load_model("potential_kdv");
        const BundleSpec* spec = m.bundle.get();
        SourceForm delta = euler_lagrange(m.lagrangian);
        if (auto s = check((delta.components[0] -
                            spec->parse("phi[t,x] + 6*phi[x]*phi[x,x] + phi[x,x,x,x]"))
                               .is_zero(),
                           "potential KdV Euler-Lagrange form wrong");
            !s.empty())
            return s;
        GeneralizedVectorField v = m.find_symmetry("third_order")->field(spec);
        SymmetryReport r = characteristic_check(v, m.lagrangian);
        if (auto s = check(r.kind == SymmetryKind::Divergence,
                           "KdV third-order flow fails the characteristic equation");
            !s.empty())
            return s;
        if (auto s = check(r.sigma.has_value() &&
                               (total_divergence(*r.sigma, *spec) - r.lie_density).is_zero(),
                           "KdV sigma reconstruction failed");
            !s.empty())
            return s;
    }
    return "";
}

std::string criterion_triviality_roundtrip() {
    return join_failures({
        selftest::triviality_roundtrip_mechanics(kSeed + 10, 100),
        selftest::triviality_roundtrip_field(kSeed + 11, 100),
    });
}

std::string criterion_master_identity() {
    return join_failures({
        selftest::master_identity_classical(kSeed + 12, 50),
        selftest::local_relation_generalized(kSeed + 13, 50),
    });
}

std::string criterion_falsifiability() {
    return join_failures({
        selftest::falsifiability_currents(kSeed + 14, 50),
        selftest::falsifiability_symmetries(kSeed + 15, 50),
    });
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1: operator identities (dH^2, dV^2, mixed, h0/d, rho^2, rho dH, delta dH; 200 cases each)",
         criterion_operator_identities},
        {"2: dual-path Euler-Lagrange, rho(dL) vs direct sum (100 Lagrangians)",
         criterion_dual_path},
        {"3: first variational formula three-piece closure (100 pairs, incl. non-projectable)",
         criterion_first_variational_formula},
        {"4: corpus certificates (oscillator, boost, Kepler, Runge-Lenz, potential KdV)",
         criterion_corpus},
        {"5: triviality round trip (100 mechanics + 100 field densities)",
         criterion_triviality_roundtrip},
        {"6: master identity, classical (50) and generalized local relation (50)",
         criterion_master_identity},
        {"7: falsifiability, 100 corrupted currents/symmetries all rejected",
         criterion_falsifiability},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string failure;
        try {
            failure = c.run();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %s%s%s\n", failure.empty() ? "PASS" : "FAIL", c.label.c_str(),
                    failure.empty() ? "" : " -- ", failure.c_str());
        if (!failure.empty()) ++failures;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
                criteria.size());
    return failures == 0 ? 0 : 1;
}
