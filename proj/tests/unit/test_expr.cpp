#include "jetvar/errors.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/selftest.hpp"

#include <doctest.h>

#include <random>

using namespace jetvar;

namespace {

std::shared_ptr<const BundleSpec> mechanics() {
    return BundleSpec::create(BaseSpec{{"t"}}, {"q"});
}

std::shared_ptr<const BundleSpec> sheet() {
    return BundleSpec::create(BaseSpec{{"t", "x"}}, {"u"});
}

std::shared_ptr<const BundleSpec> kepler_like() {
    AtomDecl r_inv{"r_inv",
                   "reciprocal radius",
                   {{"q1", "-q1*r_inv^3"}, {"q2", "-q2*r_inv^3"}}};
    return BundleSpec::create(BaseSpec{{"t"}}, {"q1", "q2"}, {r_inv});
}

} // namespace

TEST_CASE("parser handles sugar, brackets and rationals") {
    auto spec = mechanics();
    Expr half_sq = spec->parse("q_t^2 / 2");
    Expr expect = spec->jet(0, MultiIndex(1, {0})).pow(2) * Expr::from_rational(Rational(1, 2));
    CHECK((half_sq - expect).is_zero());
    CHECK(half_sq.str() == "1/2*q[t]^2");

    auto spec2 = sheet();
    CHECK(spec2->parse("u[t,x] - u[x,t]").is_zero());
    CHECK((spec2->parse("u_tx") - spec2->parse("u[t,x]")).is_zero());
}

TEST_CASE("parse errors carry positions and name detail") {
    auto spec = mechanics();
    CHECK_THROWS_WITH_AS(spec->parse("q_z"), doctest::Contains("unknown base coordinate z"),
                         ParseError);
    CHECK_THROWS_AS(spec->parse("nope + 1"), ParseError);
    CHECK_THROWS_AS(spec->parse("q +"), ParseError);
    CHECK_THROWS_AS(spec->parse("q ) q"), ParseError);
    CHECK_THROWS_AS(spec->parse("q[y]"), ParseError);
    try {
        spec->parse("q + nope");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("normalization is canonical and zero test decides equality") {
    auto spec = mechanics();
    Expr q = spec->field_var(0);
    Expr qt = spec->jet(0, MultiIndex(1, {0}));

    Expr sq = (q + qt) * (q + qt) - q * q - spec->constant(2) * q * qt - qt * qt;
    CHECK(sq.is_zero());

    Expr cancel = (qt * qt - q * q) / (qt - q);
    CHECK((cancel - (qt + q)).is_zero());
    CHECK(cancel.str() == "q[t] + q");

    CHECK_THROWS_AS(q / (qt - qt), DivisionByZero);
}

TEST_CASE("partial derivatives, including registered atom rules") {
    auto spec = mechanics();
    Expr qt = spec->jet(0, MultiIndex(1, {0}));
    Expr qtt = spec->jet(0, MultiIndex(1, {0, 0}));
    CHECK(((qt * qtt).partial(VarKey::jet_var(0, MultiIndex(1, {0, 0}))) - qt).is_zero());

    auto kep = kepler_like();
    Expr r = kep->atom_var(0);
    Expr q1 = kep->field_var(0);
    CHECK((r.partial(kep->parse_var("q1")) - kep->parse("-q1*r_inv^3")).is_zero());

    // base-coordinate partial: d(x*q)/dx -> q with x the base coordinate
    CHECK(((spec->base_var(0) * spec->field_var(0)).partial(VarKey::base(0)) -
           spec->field_var(0))
              .is_zero());
}

TEST_CASE("atom registries reject non-commuting rule families") {
    AtomDecl bad{"w", "", {{"q1", "q2"}, {"q2", "0"}}};
    CHECK_THROWS_AS(BundleSpec::create(BaseSpec{{"t"}}, {"q1", "q2"}, {bad}), Error);
}

TEST_CASE("negative exponents and nested grouping") {
    auto spec = mechanics();
    CHECK((spec->parse("q^-2") - spec->constant(1) / spec->field_var(0).pow(2)).is_zero());
    CHECK((spec->parse("(q + q_t)^2 / (q + q_t)") - spec->parse("q + q_t")).is_zero());
    CHECK((spec->parse("2^3") - spec->constant(8)).is_zero());
    CHECK((spec->parse("-q^2") + spec->parse("q^2")).is_zero()); // unary minus binds the term
}

TEST_CASE("subscript sugar requires single-character base names") {
    auto spec = BundleSpec::create(BaseSpec{{"tau"}}, {"q"});
    CHECK_THROWS_WITH_AS(spec->parse("q_tau"), doctest::Contains("unknown identifier"), ParseError);
    CHECK((spec->parse("q[tau]") - spec->jet(0, MultiIndex(1, {0}))).is_zero());
}

TEST_CASE("evaluation is exact") {
    auto spec = mechanics();
    Expr e = spec->parse("(q^2 - 1)/(q - 1)");
    std::map<VarKey, Rational> point{{spec->parse_var("q"), Rational(3, 2)}};
    CHECK(e.eval(point) == Rational(5, 2));
}

TEST_CASE("jet order counts atoms at their dependency order") {
    auto kep = kepler_like();
    CHECK(kep->atom_var(0).jet_order() == 0);
    CHECK(kep->parse("r_inv*q1_t").jet_order() == 1);
    CHECK(kep->parse("q1[t,t]").jet_order() == 2);
}

TEST_CASE("polynomial gcd and exact division withstand common factors") {
    auto spec = sheet();
    std::mt19937_64 rng(2024);
    auto random_poly = [&](int terms) {
        std::vector<VarKey> vars{VarKey::base(0), VarKey::base(1),
                                 spec->parse_var("u"), spec->parse_var("u[t]"),
                                 spec->parse_var("u[x]")};
        Polynomial p;
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            int nf = static_cast<int>(rng() % 3);
            for (int j = 0; j < nf; ++j)
                m = m * Monomial(vars[rng() % vars.size()], 1 + static_cast<int>(rng() % 2));
            p.add_term(m, Rational(1 + static_cast<long>(rng() % 5),
                                   1 + static_cast<long>(rng() % 3)) *
                              (rng() % 2 ? 1 : -1));
        }
        return p;
    };
    for (int c = 0; c < 60; ++c) {
        Polynomial a = random_poly(2), b = random_poly(2), g = random_poly(2);
        if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
        Polynomial ag = a * g, bg = b * g;
        Polynomial d = poly_gcd(ag, bg);
        // g divides the gcd, and the gcd divides both products
        CHECK(poly_divide_exact(d, poly_gcd(g, d)).has_value());
        CHECK(poly_divide_exact(ag, d).has_value());
        CHECK(poly_divide_exact(bg, d).has_value());
        CHECK((*poly_divide_exact(ag, d)) * d == ag);

        // fractions built from common factors normalize to coprime form
        Expr ratio = Expr::make(spec.get(), ag, bg);
        CHECK(poly_gcd(ratio.num(), ratio.den()).is_constant());
    }
}

TEST_CASE("module properties: Leibniz, commuting partials, round trip, oracle") {
    CHECK(selftest::expr_leibniz(7, 40).ok());
    CHECK(selftest::expr_partials_commute(11, 40).ok());
    CHECK(selftest::expr_print_roundtrip(13, 40).ok());
    CHECK(selftest::expr_zero_oracle(17, 60).ok());
}
