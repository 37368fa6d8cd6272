#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tangle/tangle_c.h>

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* name)
        : path(std::filesystem::temp_directory_path() / name)
    {
    }
    ~TempFile() { std::filesystem::remove(path); }
};

struct Config {
    tangle_sweep_config* cfg;
    Config() : cfg(tangle_sweep_config_create()) { REQUIRE(cfg != nullptr); }
    ~Config() { tangle_sweep_config_free(cfg); }
};

} // namespace

TEST_CASE("version string")
{
    REQUIRE(tangle_version() != nullptr);
    CHECK(std::strcmp(tangle_version(), "1.0.0") == 0);
}

TEST_CASE("report for the corner states")
{
    tangle_report rep{};
    REQUIRE(tangle_lrt_report(kPi / 2, kPi / 4, 0.0, &rep) == TANGLE_OK);
    CHECK(std::abs(rep.tau - 1.0) < 1e-12);
    CHECK(std::abs(rep.negativity - 1.0) < 1e-12);
    CHECK(std::abs(rep.eta - 4.0) < 1e-12);
    for (double m : rep.omega_moduli) CHECK(std::abs(m - 2.0) < 1e-12);

    REQUIRE(tangle_lrt_report(0.0, 0.0, 0.0, &rep) == TANGLE_OK);
    CHECK(std::abs(rep.tau) < 1e-12);
    CHECK(std::abs(rep.eta - 4.0 / 3.0) < 1e-12);

    REQUIRE(tangle_lrt_report(kPi / 2, 0.0, 0.0, &rep) == TANGLE_OK);
    CHECK(rep.tau < 1e-12);
    CHECK(rep.negativity < 1e-12);
    CHECK(rep.eta < 1e-12);
}

TEST_CASE("report rejects out of range input")
{
    tangle_report rep{};
    CHECK(tangle_lrt_report(5.0, 0.0, 0.0, &rep) == TANGLE_ERR_DOMAIN);
    CHECK(std::strlen(tangle_last_error()) > 0);
    CHECK(tangle_lrt_report(0.0, 0.0, 0.0, nullptr) == TANGLE_ERR_INVALID);
    // a successful call clears the error
    REQUIRE(tangle_lrt_report(0.3, 0.3, 0.3, &rep) == TANGLE_OK);
    CHECK(std::strlen(tangle_last_error()) == 0);
}

TEST_CASE("verification suite passes and reacts to tightened tolerances")
{
    tangle_verify_result* res = nullptr;
    REQUIRE(tangle_verify_run(1.0, 20240101, &res) == TANGLE_OK);
    REQUIRE(res != nullptr);
    const size_t n = tangle_verify_count(res);
    CHECK(n > 20);
    CHECK(tangle_verify_failures(res) == 0);

    bool saw_r_identities = false;
    for (size_t i = 0; i < n; ++i) {
        tangle_check_info info{};
        REQUIRE(tangle_verify_check(res, i, &info) == TANGLE_OK);
        CHECK(info.pass == 1);
        CHECK(info.residual <= info.tolerance);
        if (std::strcmp(info.name, "r_identities") == 0) {
            saw_r_identities = true;
            CHECK(info.residual < 1e-10);
        }
    }
    CHECK(saw_r_identities);

    tangle_check_info info{};
    CHECK(tangle_verify_check(res, n, &info) == TANGLE_ERR_INVALID);
    tangle_verify_free(res);

    // squeezing every tolerance far below attainable precision must fail
    tangle_verify_result* strict = nullptr;
    REQUIRE(tangle_verify_run(1e-12, 20240101, &strict) == TANGLE_OK);
    CHECK(tangle_verify_failures(strict) > 0);
    tangle_verify_free(strict);

    CHECK(tangle_verify_run(0.0, 1, &res) == TANGLE_ERR_INVALID);
    CHECK(tangle_verify_run(1.0, 1, nullptr) == TANGLE_ERR_INVALID);
}

TEST_CASE("sweep configuration validation")
{
    Config c;
    CHECK(tangle_sweep_config_set_grid(c.cfg, 1) == TANGLE_ERR_INVALID);
    CHECK(tangle_sweep_config_set_grid(c.cfg, 8) == TANGLE_OK);
    CHECK(tangle_sweep_config_set_format(c.cfg, "yaml") == TANGLE_ERR_INVALID);
    CHECK(tangle_sweep_config_set_format(c.cfg, "json") == TANGLE_OK);
    CHECK(tangle_sweep_config_set_threads(c.cfg, -1) == TANGLE_ERR_INVALID);
    CHECK(tangle_sweep_config_set_threads(c.cfg, 1) == TANGLE_OK);
    CHECK(tangle_write_figure(c.cfg, 0, nullptr) == TANGLE_ERR_INVALID);
    CHECK(tangle_write_figure(c.cfg, 4, nullptr) == TANGLE_ERR_INVALID);
    CHECK(tangle_write_figure(nullptr, 1, nullptr) == TANGLE_ERR_INVALID);
}

TEST_CASE("figure one is deterministic and carries its header")
{
    Config c;
    REQUIRE(tangle_sweep_config_set_grid(c.cfg, 6) == TANGLE_OK);
    REQUIRE(tangle_sweep_config_set_seed(c.cfg, 7) == TANGLE_OK);
    REQUIRE(tangle_sweep_config_set_threads(c.cfg, 2) == TANGLE_OK);

    TempFile a("tangle_api_fig1_a.csv");
    TempFile b("tangle_api_fig1_b.csv");
    REQUIRE(tangle_write_figure(c.cfg, 1, a.path.string().c_str()) == TANGLE_OK);
    REQUIRE(tangle_write_figure(c.cfg, 1, b.path.string().c_str()) == TANGLE_OK);

    const std::string text = slurp(a.path);
    CHECK(text == slurp(b.path));
    CHECK(text.rfind("# tangle-response 1.0.0 cmd=fig1 grid=6 seed=7 format=csv", 0) == 0);
    CHECK(text.find("alpha,beta,gamma,tau,negativity,eta,family") != std::string::npos);
    // cloud + both boundary families
    CHECK(text.find(",sym") != std::string::npos);
    CHECK(text.find(",G") != std::string::npos);
    CHECK(text.find(",J") != std::string::npos);

    // single threaded output is byte-identical to the worker pool output
    REQUIRE(tangle_sweep_config_set_threads(c.cfg, 1) == TANGLE_OK);
    TempFile serial("tangle_api_fig1_serial.csv");
    REQUIRE(tangle_write_figure(c.cfg, 1, serial.path.string().c_str()) == TANGLE_OK);
    CHECK(text == slurp(serial.path));
}

TEST_CASE("json output parses and matches the schema")
{
    Config c;
    REQUIRE(tangle_sweep_config_set_grid(c.cfg, 5) == TANGLE_OK);
    REQUIRE(tangle_sweep_config_set_format(c.cfg, "json") == TANGLE_OK);
    REQUIRE(tangle_sweep_config_set_threads(c.cfg, 1) == TANGLE_OK);

    TempFile f("tangle_api_fig3.json");
    REQUIRE(tangle_write_figure(c.cfg, 3, f.path.string().c_str()) == TANGLE_OK);

    const auto j = nlohmann::json::parse(slurp(f.path));
    CHECK(j.at("schema") == "tangle-response/1");
    CHECK(j.at("name") == "fig3");
    CHECK(j.at("columns").size() == 6);
    REQUIRE(j.at("rows").size() == 10);
    for (const auto& row : j.at("rows")) {
        const double qt = row.at(2).get<double>();
        CHECK(qt > 0.0);
        CHECK(qt < 1.0);
    }
}

TEST_CASE("write failure surfaces as an io error")
{
    Config c;
    REQUIRE(tangle_sweep_config_set_grid(c.cfg, 5) == TANGLE_OK);
    CHECK(tangle_write_figure(c.cfg, 3, "/nonexistent-dir/out.csv") == TANGLE_ERR_IO);
    CHECK(std::strlen(tangle_last_error()) > 0);
}

TEST_CASE("roof summary for two qubits")
{
    tangle_roof_summary s{};
    REQUIRE(tangle_roof_2q(kPi / 4, 0.1, 0, 8, 1, &s) == TANGLE_OK);
    CHECK(std::abs(s.ansatz - 0.8) < 1e-12);
    CHECK(std::abs(s.oracle - 0.8) < 1e-4);
    CHECK(s.gap >= -1e-4);
    CHECK(std::abs(s.gap - (s.ansatz - s.oracle)) < 1e-15);

    CHECK(tangle_roof_2q(kPi / 4, 0.1, 0, 0, 1, &s) == TANGLE_ERR_INVALID);
    CHECK(tangle_roof_2q(2.0, 0.1, 0, 4, 1, &s) == TANGLE_ERR_DOMAIN);
    CHECK(tangle_roof_2q(kPi / 4, 0.1, 0, 4, 1, nullptr) == TANGLE_ERR_INVALID);
}

TEST_CASE("roof summary for three qubits")
{
    tangle_roof_summary s{};
    REQUIRE(tangle_roof_3q(kPi / 2, kPi / 4, 0.0, 0.01, 0, 6, 2, &s) == TANGLE_OK);
    CHECK(s.oracle <= s.ansatz + 1e-4);
    CHECK(s.oracle > 0.5);

    // no noise: the roof collapses to the pure tangle
    REQUIRE(tangle_roof_3q(kPi / 2, kPi / 4, 0.0, 0.0, 0, 2, 2, &s) == TANGLE_OK);
    CHECK(std::abs(s.ansatz - 1.0) < 1e-12);
    CHECK(std::abs(s.oracle - 1.0) < 1e-10);

    CHECK(tangle_roof_3q(9.0, 0.0, 0.0, 0.01, 0, 4, 1, &s) == TANGLE_ERR_DOMAIN);
}
