// End-to-end tests of the installed CLI binary: byte-exact golden output,
// exit codes, and determinism. The binary path arrives via $JETVAR_BIN.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout only
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("JETVAR_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "JETVAR_BIN must point at the jetvar binary");
    std::string out_path = std::string("cli_out_") + std::to_string(rand()) + ".tmp";
    std::string cmd = std::string(bin) + " " + args + " > " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::remove(out_path.c_str());
    int code = -1;
#ifdef WIFEXITED
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
#else
    code = status;
#endif
    return {code, buf.str()};
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(JETVAR_GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), ("missing golden file " + name).c_str());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string model(const std::string& name) {
    return std::string(JETVAR_MODELS_DIR) + "/" + name + ".model";
}

} // namespace

TEST_CASE("golden: el") {
    auto r = run_cli("el " + model("harmonic_oscillator"));
    CHECK(r.exit_code == 0);
    CHECK(r.output == golden("el_harmonic_oscillator.txt"));

    auto kdv = run_cli("el " + model("potential_kdv"));
    CHECK(kdv.exit_code == 0);
    CHECK(kdv.output == golden("el_potential_kdv.txt"));
}

TEST_CASE("golden: symmetry") {
    auto boost = run_cli("symmetry " + model("free_particle") + " --name boost");
    CHECK(boost.exit_code == 0);
    CHECK(boost.output == golden("symmetry_free_particle_boost.txt"));

    auto third = run_cli("symmetry " + model("potential_kdv") + " --name third_order");
    CHECK(third.exit_code == 0);
    CHECK(third.output == golden("symmetry_potential_kdv_third_order.txt"));

    auto bad = run_cli("symmetry " + model("harmonic_oscillator") + " --name scaling");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output == golden("symmetry_harmonic_oscillator_scaling.txt"));
}

TEST_CASE("golden: noether") {
    auto rot = run_cli("noether " + model("kepler_2d") + " --name rotation");
    CHECK(rot.exit_code == 0);
    CHECK(rot.output == golden("noether_kepler_2d_rotation.txt"));

    auto rl = run_cli("noether " + model("kepler_2d") + " --name runge_lenz_1");
    CHECK(rl.exit_code == 0);
    CHECK(rl.output == golden("noether_kepler_2d_runge_lenz_1.txt"));

    auto json = run_cli("--json noether " + model("harmonic_oscillator") + " --name time");
    CHECK(json.exit_code == 0);
    CHECK(json.output == golden("noether_harmonic_oscillator_time.json"));

    auto corrupted =
        run_cli("noether " + model("harmonic_oscillator") + " --name time_corrupted --check-current");
    CHECK(corrupted.exit_code == 1);
}

TEST_CASE("golden: triviality") {
    std::string trivial = std::string(JETVAR_DATA_DIR) + "/trivial_density.model";
    auto r = run_cli("triviality " + trivial);
    CHECK(r.exit_code == 0);
    CHECK(r.output == golden("triviality_trivial_density.txt"));

    auto bad = run_cli("triviality " + model("free_particle"));
    CHECK(bad.exit_code == 1);
}

TEST_CASE("identical inputs produce byte-identical certificates") {
    auto a = run_cli("noether " + model("kepler_2d") + " --name runge_lenz_2");
    auto b = run_cli("noether " + model("kepler_2d") + " --name runge_lenz_2");
    CHECK(a.output == b.output);
    CHECK(a.exit_code == 0);
}

TEST_CASE("selftest is seed-reproducible and exits cleanly") {
    auto a = run_cli("selftest --seed 7");
    auto b = run_cli("selftest --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("[PASS]") != std::string::npos);
}

TEST_CASE("usage and file errors exit with code 2") {
    CHECK(run_cli("el /definitely/missing.model").exit_code == 2);
    CHECK(run_cli("frobnicate x").exit_code == 2);
    CHECK(run_cli("symmetry " + model("free_particle") + " --name nope").exit_code == 2);
}
