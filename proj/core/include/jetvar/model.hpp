#pragma once

#include "jetvar/symmetry.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace jetvar {

/// Candidate symmetry from a model file: components xi.<coord> / eta.<field>,
/// optional sigma.<coord> for externally derived divergences and optional
/// current.<coord> entries to verify with --check-current.
struct SymmetryDecl {
    std::string name;
    std::vector<Expr> xi;
    std::vector<Expr> eta;
    std::optional<std::vector<Expr>> sigma;
    std::optional<std::vector<Expr>> current;

    GeneralizedVectorField field(const BundleSpec* spec) const { return {spec, xi, eta}; }
};

/// A parsed model file: bundle, Lagrangian and named candidate symmetries.
/// Format is a small INI subset: [section] headers, key = value lines and
/// full-line # comments. See the repository README for the schema.
struct Model {
    std::string source_name;
    std::string digest; // fnv1a64 over the raw file bytes
    std::shared_ptr<const BundleSpec> bundle;
    Lagrangian lagrangian;
    std::vector<SymmetryDecl> symmetries;

    static Model load(const std::string& path);
    static Model parse(const std::string& text, const std::string& source_name);

    const SymmetryDecl* find_symmetry(const std::string& name) const;
};

/// Deterministic result record of one CLI command; rendering the same inputs
/// reproduces the certificate byte for byte.
struct Certificate {
    std::string command;
    std::string model;
    std::string digest;
    std::string symmetry; // empty when not applicable
    std::vector<std::pair<std::string, std::string>> entries;
    std::string verdict;
    int exit_code = 0;

    std::string text() const;
    std::string json() const;
};

Certificate cmd_el(const Model& model);
Certificate cmd_symmetry(const Model& model, const std::string& name);
Certificate cmd_noether(const Model& model, const std::string& name, bool check_current);
Certificate cmd_triviality(const Model& model);

std::string fnv1a64_hex(const std::string& bytes);

} // namespace jetvar
