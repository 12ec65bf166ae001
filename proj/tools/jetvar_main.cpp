#include "jetvar/errors.hpp"
#include "jetvar/model.hpp"
#include "jetvar/selftest.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

int emit(const jetvar::Certificate& cert, bool json) {
    if (json)
        std::cout << cert.json() << "\n";
    else
        std::cout << cert.text();
    return cert.exit_code;
}

int run_selftest(std::uint64_t seed, bool json) {
    auto reports = jetvar::selftest::run_all(seed);
    int failed = 0;
    for (const auto& r : reports) {
        if (json) {
            jetvar::Certificate c;
            c.command = "selftest";
            c.model = r.name;
            c.digest = "";
            c.entries.emplace_back("cases", std::to_string(r.cases));
            if (!r.ok()) c.entries.emplace_back("failure", r.failure);
            c.verdict = r.ok() ? "pass" : "fail";
            std::cout << c.json() << "\n";
        } else {
            std::printf("[%s] %s (%d cases)%s%s\n", r.ok() ? "PASS" : "FAIL", r.name.c_str(),
                        r.cases, r.ok() ? "" : ": ", r.ok() ? "" : r.failure.c_str());
        }
        if (!r.ok()) ++failed;
    }
    if (!json)
        std::printf("selftest: %zu/%zu suites passed\n", reports.size() - static_cast<std::size_t>(failed),
                    reports.size());
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"jetvar - symbolic variational calculus on jet coordinates"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "emit one JSON object per certificate");

    std::string file, name;
    bool check_current = false;
    std::uint64_t seed = 20240901;

    CLI::App* el = app.add_subcommand("el", "Euler-Lagrange components of the Lagrangian");
    el->add_option("file", file, "model file")->required();

    CLI::App* symmetry = app.add_subcommand("symmetry", "characteristic-equation check");
    symmetry->add_option("file", file, "model file")->required();
    symmetry->add_option("--name", name, "symmetry name")->required();

    CLI::App* noether = app.add_subcommand("noether", "Noether current with off-shell certificate");
    noether->add_option("file", file, "model file")->required();
    noether->add_option("--name", name, "symmetry name")->required();
    noether->add_flag("--check-current", check_current,
                      "verify the current declared in the model instead of computing one");

    CLI::App* triviality = app.add_subcommand("triviality", "variational triviality verdict");
    triviality->add_option("file", file, "model file")->required();

    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
    selftest->add_option("--seed", seed, "seed for the randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (selftest->parsed()) return run_selftest(seed, json);
        jetvar::Model model = jetvar::Model::load(file);
        if (el->parsed()) return emit(jetvar::cmd_el(model), json);
        if (symmetry->parsed()) return emit(jetvar::cmd_symmetry(model, name), json);
        if (noether->parsed()) return emit(jetvar::cmd_noether(model, name, check_current), json);
        if (triviality->parsed()) return emit(jetvar::cmd_triviality(model), json);
    } catch (const jetvar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
