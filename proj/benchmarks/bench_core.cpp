#include "jetvar/symmetry.hpp"

#include <benchmark/benchmark.h>

using namespace jetvar;

namespace {

std::shared_ptr<const BundleSpec> mechanics() {
    static auto spec = BundleSpec::create(BaseSpec{{"t"}}, {"q"});
    return spec;
}

std::shared_ptr<const BundleSpec> sheet() {
    static auto spec = BundleSpec::create(BaseSpec{{"t", "x"}}, {"phi"});
    return spec;
}

void BM_normalize_fraction(benchmark::State& state) {
    auto spec = mechanics();
    Expr num = spec->parse("(q + q_t)^5 - q^5");
    Expr den = spec->parse("q + q_t");
    for (auto _ : state) benchmark::DoNotOptimize(num / den);
}
BENCHMARK(BM_normalize_fraction);

void BM_euler_lagrange_kdv(benchmark::State& state) {
    auto spec = sheet();
    Lagrangian L{spec.get(), spec->parse("-1/2*phi_x*phi_t - phi_x^3 + 1/2*phi_xx^2")};
    for (auto _ : state) benchmark::DoNotOptimize(euler_lagrange(L));
}
BENCHMARK(BM_euler_lagrange_kdv);

void BM_prolong_order4(benchmark::State& state) {
    auto spec = mechanics();
    for (auto _ : state) {
        GeneralizedVectorField v =
            GeneralizedVectorField::vertical(spec.get(), {spec->parse("q*q_t + t*q^2")});
        MultiIndex mi(1, {0, 0, 0, 0});
        benchmark::DoNotOptimize(v.prolonged(0, mi));
    }
}
BENCHMARK(BM_prolong_order4);

void BM_rho_projection(benchmark::State& state) {
    auto spec = sheet();
    ContactForm phi = ContactForm::theta(spec.get(), 0, MultiIndex(2, {0, 1}))
                          .wedge(ContactForm::volume(spec.get())) *
                      spec->parse("phi_x*phi_tx + phi^2");
    for (auto _ : state) benchmark::DoNotOptimize(phi.rho());
}
BENCHMARK(BM_rho_projection);

void BM_invert_divergence_field(benchmark::State& state) {
    auto spec = sheet();
    Expr h = total_derivative(spec->parse("phi^3 + phi_x*phi_t"), 0) +
             total_derivative(spec->parse("phi*phi_tx"), 1);
    for (auto _ : state) benchmark::DoNotOptimize(invert_total_divergence(h, *spec));
}
BENCHMARK(BM_invert_divergence_field);

} // namespace

BENCHMARK_MAIN();
