#include "jetvar/errors.hpp"
#include "jetvar/selftest.hpp"
#include "jetvar/symmetry.hpp"

#include <doctest.h>

#include <atomic>
#include <thread>

using namespace jetvar;

namespace {

std::shared_ptr<const BundleSpec> mechanics() {
    return BundleSpec::create(BaseSpec{{"t"}}, {"q"});
}

GeneralizedVectorField time_translation(const BundleSpec* spec) {
    std::vector<Expr> xi(static_cast<std::size_t>(spec->base_dim()), spec->zero());
    xi[0] = spec->constant(1);
    std::vector<Expr> eta(static_cast<std::size_t>(spec->field_count()), spec->zero());
    return {spec, std::move(xi), std::move(eta)};
}

} // namespace

TEST_CASE("prolongation of basic fields") {
    auto spec = mechanics();
    MultiIndex t1(1, {0});

    GeneralizedVectorField scaling =
        GeneralizedVectorField::vertical(spec.get(), {spec->field_var(0)});
    CHECK((scaling.prolonged(0, t1) - spec->parse("q_t")).is_zero());

    GeneralizedVectorField dt = time_translation(spec.get());
    CHECK(dt.prolonged(0, t1).is_zero());
    CHECK(dt.prolonged(0, MultiIndex(1, {0, 0})).is_zero());

    GeneralizedVectorField boost =
        GeneralizedVectorField::vertical(spec.get(), {spec->base_var(0)});
    CHECK((boost.prolonged(0, t1) - spec->constant(1)).is_zero());
}

TEST_CASE("horizontal and vertical split") {
    auto spec = mechanics();
    GeneralizedVectorField dt = time_translation(spec.get());
    CHECK((dt.vertical_component(0) - spec->parse("-q_t")).is_zero());
    auto [h, v] = dt.vertical_split();
    CHECK(v.is_vertical());
    CHECK((v.eta(0) - spec->parse("-q_t")).is_zero());
    CHECK(h.xi(0).is_one());

    GeneralizedVectorField vert = GeneralizedVectorField::vertical(spec.get(), {spec->parse("q^2")});
    auto [h2, v2] = vert.vertical_split();
    CHECK(h2.xi(0).is_zero());
    CHECK((v2.eta(0) - vert.eta(0)).is_zero());

    // the total-derivative lift of a base vector field has no vertical part
    GeneralizedVectorField lift(spec.get(), {spec->base_var(0)},
                                {spec->parse("t*q_t")});
    CHECK(lift.vertical_component(0).is_zero());

    // acting on scalars, v = v_H + v_V exactly
    GeneralizedVectorField mixed(spec.get(), {spec->parse("q_t")}, {spec->parse("q^2 + t")});
    auto [mh, mv] = mixed.vertical_split();
    Expr probe = spec->parse("q*q_tt + t*q_t^2");
    CHECK((mixed.apply(probe) - mh.apply(probe) - mv.apply(probe)).is_zero());
}

TEST_CASE("classification predicates") {
    auto spec = mechanics();
    CHECK(time_translation(spec.get()).is_classical());
    GeneralizedVectorField gen =
        GeneralizedVectorField::vertical(spec.get(), {spec->parse("q_t")});
    CHECK(gen.is_projectable());
    CHECK_FALSE(gen.is_classical());
    GeneralizedVectorField wild(spec.get(), {spec->parse("q_t")}, {spec->zero()});
    CHECK_FALSE(wild.is_projectable());
}

TEST_CASE("Lie derivative of Lagrangians") {
    auto spec = mechanics();
    Lagrangian free{spec.get(), spec->parse("1/2*q_t^2")};

    CHECK(lie_derivative_lagrangian(time_translation(spec.get()), free).is_zero());

    GeneralizedVectorField boost =
        GeneralizedVectorField::vertical(spec.get(), {spec->base_var(0)});
    ContactForm lie = lie_derivative_lagrangian(boost, free);
    CHECK((lie.density() - spec->parse("q_t")).is_zero());

    GeneralizedVectorField zero =
        GeneralizedVectorField::vertical(spec.get(), {spec->zero()});
    CHECK(lie_derivative_lagrangian(zero, free).is_zero());
}

TEST_CASE("first variational formula pieces") {
    auto spec = mechanics();
    Lagrangian harm{spec.get(), spec->parse("1/2*q_t^2 - 1/2*q^2")};

    VariationalDecomposition dec = first_variational_formula(time_translation(spec.get()), harm);
    CHECK(dec.total.is_zero());
    CHECK((dec.euler_piece.density() - spec->parse("-q_t*(-q_tt - q)")).is_zero());
    CHECK(dec.warp_piece.is_zero());

    Lagrangian free{spec.get(), spec->parse("1/2*q_t^2")};
    GeneralizedVectorField scaling =
        GeneralizedVectorField::vertical(spec.get(), {spec->field_var(0)});
    VariationalDecomposition dec2 = first_variational_formula(scaling, free);
    CHECK((dec2.total.density() - spec->parse("q_t^2")).is_zero());
    CHECK((dec2.euler_piece.density() - spec->parse("-q*q_tt")).is_zero());
    CHECK((dec2.boundary_piece.density() - spec->parse("q_t^2 + q*q_tt")).is_zero());

    GeneralizedVectorField zero = GeneralizedVectorField::vertical(spec.get(), {spec->zero()});
    VariationalDecomposition dec3 = first_variational_formula(zero, harm);
    CHECK(dec3.total.is_zero());
    CHECK(dec3.euler_piece.is_zero());
    CHECK(dec3.boundary_piece.is_zero());
}

TEST_CASE("characteristic checks") {
    auto spec = mechanics();
    Lagrangian free{spec.get(), spec->parse("1/2*q_t^2")};
    Lagrangian harm{spec.get(), spec->parse("1/2*q_t^2 - 1/2*q^2")};

    GeneralizedVectorField boost =
        GeneralizedVectorField::vertical(spec.get(), {spec->base_var(0)});
    SymmetryReport r = characteristic_check(boost, free);
    CHECK(r.kind == SymmetryKind::Divergence);
    REQUIRE(r.sigma.has_value());
    CHECK(((*r.sigma)[0] - spec->field_var(0)).is_zero());

    CHECK(characteristic_check(time_translation(spec.get()), harm).kind == SymmetryKind::Exact);

    GeneralizedVectorField scaling =
        GeneralizedVectorField::vertical(spec.get(), {spec->field_var(0)});
    SymmetryReport bad = characteristic_check(scaling, harm);
    CHECK(bad.kind == SymmetryKind::None);
    CHECK((bad.residual.components[0] - spec->parse("-2*q_tt - 2*q")).is_zero());

    GeneralizedVectorField wild(spec.get(), {spec->parse("q_t")}, {spec->zero()});
    CHECK_THROWS_AS(characteristic_check(wild, harm), NotProjectable);
}

TEST_CASE("Noether currents") {
    auto spec = mechanics();
    Lagrangian harm{spec.get(), spec->parse("1/2*q_t^2 - 1/2*q^2")};
    NoetherCurrent energy = noether_current(time_translation(spec.get()), harm);
    CHECK((energy.components[0] - spec->parse("-(1/2*q_t^2 + 1/2*q^2)")).is_zero());
    CHECK(conservation_residual(time_translation(spec.get()), harm, energy).is_zero());

    Lagrangian free{spec.get(), spec->parse("1/2*q_t^2")};
    GeneralizedVectorField boost =
        GeneralizedVectorField::vertical(spec.get(), {spec->base_var(0)});
    std::vector<Expr> sigma{spec->field_var(0)};
    NoetherCurrent charge = noether_current(boost, free, &sigma);
    CHECK((charge.components[0] - spec->parse("t*q_t - q")).is_zero());
    CHECK(conservation_residual(boost, free, charge).is_zero());

    // total-derivative lift: the current is tautologically zero
    GeneralizedVectorField lift(spec.get(), {spec->constant(1)}, {spec->parse("q_t")});
    SymmetryReport lift_report = characteristic_check(lift, harm);
    CHECK(lift_report.kind == SymmetryKind::Divergence);
    REQUIRE(lift_report.sigma.has_value());
    NoetherCurrent taut = noether_current(lift, harm, &*lift_report.sigma);
    CHECK(taut.components[0].is_zero());
    CHECK(conservation_residual(lift, harm, taut).is_zero());
}

TEST_CASE("conservation residual is falsifiable") {
    auto spec = mechanics();
    Lagrangian harm{spec.get(), spec->parse("1/2*q_t^2 - 1/2*q^2")};
    NoetherCurrent energy = noether_current(time_translation(spec.get()), harm);
    energy.components[0] += spec->parse("q_t");
    Expr residual = conservation_residual(time_translation(spec.get()), harm, energy);
    CHECK_FALSE(residual.is_zero());
    CHECK((residual - spec->parse("q_tt")).is_zero());
}

TEST_CASE("Kepler angular momentum verifies off shell") {
    AtomDecl r_inv{"r_inv",
                   "reciprocal radius",
                   {{"q1", "-q1*r_inv/(q1^2 + q2^2)"}, {"q2", "-q2*r_inv/(q1^2 + q2^2)"}}};
    auto spec = BundleSpec::create(BaseSpec{{"t"}}, {"q1", "q2"}, {r_inv});
    Lagrangian kepler{spec.get(), spec->parse("1/2*(q1_t^2 + q2_t^2) + r_inv")};

    GeneralizedVectorField rotation = GeneralizedVectorField::vertical(
        spec.get(), {spec->parse("-q2"), spec->parse("q1")});
    CHECK(characteristic_check(rotation, kepler).kind == SymmetryKind::Exact);
    NoetherCurrent J = noether_current(rotation, kepler);
    CHECK((J.components[0] - spec->parse("q1*q2_t - q2*q1_t")).is_zero());
    CHECK(conservation_residual(rotation, kepler, J).is_zero());
}

TEST_CASE("master identity and its generalized correction") {
    auto spec = mechanics();
    Lagrangian harm{spec.get(), spec->parse("1/2*q_t^2 - 1/2*q^2")};

    MasterIdentityReport r1 = master_identity_check(time_translation(spec.get()), harm);
    CHECK(r1.holds);
    CHECK(r1.lhs.is_zero());
    CHECK(r1.rhs.is_zero());
    CHECK(r1.correction.is_zero());

    GeneralizedVectorField scaling =
        GeneralizedVectorField::vertical(spec.get(), {spec->field_var(0)});
    MasterIdentityReport r2 = master_identity_check(scaling, harm);
    CHECK(r2.holds);
    CHECK(r2.correction.is_zero()); // classical shape
    CHECK_FALSE(r2.lhs.is_zero());

    GeneralizedVectorField boost =
        GeneralizedVectorField::vertical(spec.get(), {spec->base_var(0)});
    MasterIdentityReport r3 = master_identity_check(boost, harm);
    CHECK(r3.holds);

    GeneralizedVectorField gen =
        GeneralizedVectorField::vertical(spec.get(), {spec->parse("q_t^2 + q*q_tt")});
    MasterIdentityReport r4 = master_identity_check(gen, harm);
    CHECK(r4.holds);
    CHECK_FALSE(r4.correction.is_zero());
}

TEST_CASE("master identity with a registered atom") {
    AtomDecl r_inv{"r_inv",
                   "reciprocal radius",
                   {{"q1", "-q1*r_inv/(q1^2 + q2^2)"}, {"q2", "-q2*r_inv/(q1^2 + q2^2)"}}};
    auto spec = BundleSpec::create(BaseSpec{{"t"}}, {"q1", "q2"}, {r_inv});
    Lagrangian kepler{spec.get(), spec->parse("1/2*(q1_t^2 + q2_t^2) + r_inv")};

    GeneralizedVectorField rotation = GeneralizedVectorField::vertical(
        spec.get(), {spec->parse("-q2"), spec->parse("q1")});
    MasterIdentityReport classical = master_identity_check(rotation, kepler);
    CHECK(classical.holds);
    CHECK(classical.correction.is_zero());

    GeneralizedVectorField runge_lenz = GeneralizedVectorField::vertical(
        spec.get(), {spec->parse("q2*q2_t"), spec->parse("q2*q1_t - 2*q1*q2_t")});
    MasterIdentityReport generalized = master_identity_check(runge_lenz, kepler);
    CHECK(generalized.holds);
    CHECK_FALSE(generalized.correction.is_zero());
}

TEST_CASE("shared vector fields are usable from several threads") {
    auto spec = mechanics();
    Lagrangian harm{spec.get(), spec->parse("1/2*q_t^2 - 1/2*q^2")};
    GeneralizedVectorField v(spec.get(), {spec->constant(1)}, {spec->parse("q*q_t")});
    std::vector<std::thread> workers;
    std::atomic<int> failures{0};
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&] {
            for (int rep = 0; rep < 8; ++rep) {
                MultiIndex mi(1, {0, 0});
                Expr a = v.theta_pairing(0, mi);
                Expr b = total_derivative(v.vertical_component(0), mi);
                if (!(a - b).is_zero()) ++failures;
            }
        });
    for (auto& w : workers) w.join();
    CHECK(failures == 0);
}

TEST_CASE("module properties") {
    CHECK(selftest::prolongation_consistency(79, 30).ok());
    CHECK(selftest::vertical_interior_relation(83, 30).ok());
    CHECK(selftest::variational_formula_closure(89, 15).ok());
    CHECK(selftest::vertical_equivalence(97, 10).ok());
    CHECK(selftest::master_identity_classical(101, 10).ok());
    CHECK(selftest::local_relation_generalized(103, 10).ok());
    CHECK(selftest::falsifiability_currents(107, 20).ok());
    CHECK(selftest::falsifiability_symmetries(109, 20).ok());
}
