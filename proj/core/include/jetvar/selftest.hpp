#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jetvar::selftest {

struct Report {
    std::string name;
    int cases = 0;
    std::string failure; // empty on success

    bool ok() const { return failure.empty(); }
};

// multiindex
Report multiindex_monoid();
Report multiindex_enumerate_counts();
Report multiindex_orderings_bound();

// symexpr
Report expr_leibniz(std::uint64_t seed, int cases);
Report expr_partials_commute(std::uint64_t seed, int cases);
Report expr_print_roundtrip(std::uint64_t seed, int cases);
Report expr_zero_oracle(std::uint64_t seed, int cases);

// jetops
Report total_derivatives_commute(std::uint64_t seed, int cases);
Report delta_after_dh(std::uint64_t seed, int cases);
Report euler_lagrange_linearity(std::uint64_t seed, int cases);
Report triviality_roundtrip_mechanics(std::uint64_t seed, int cases);
Report triviality_roundtrip_field(std::uint64_t seed, int cases);

// contactforms
Report dh_squared(std::uint64_t seed, int cases);
Report dv_squared(std::uint64_t seed, int cases);
Report dh_dv_anticommute(std::uint64_t seed, int cases);
Report h0_commutes_with_d(std::uint64_t seed, int cases);
Report rho_idempotent(std::uint64_t seed, int cases);
Report rho_annihilates_dh(std::uint64_t seed, int cases);
Report rho_d_rho(std::uint64_t seed, int cases);
Report delta_nilpotent_fragment(std::uint64_t seed, int cases);
Report dual_path_euler_lagrange(std::uint64_t seed, int cases);

// symmetry
Report prolongation_consistency(std::uint64_t seed, int cases);
Report vertical_interior_relation(std::uint64_t seed, int cases);
Report variational_formula_closure(std::uint64_t seed, int cases);
Report vertical_equivalence(std::uint64_t seed, int cases);
Report master_identity_classical(std::uint64_t seed, int cases);
Report local_relation_generalized(std::uint64_t seed, int cases);

// falsifiability
Report falsifiability_currents(std::uint64_t seed, int cases);
Report falsifiability_symmetries(std::uint64_t seed, int cases);

/// Every suite at selftest scale (smaller case counts than acceptance).
std::vector<Report> run_all(std::uint64_t seed);

} // namespace jetvar::selftest
