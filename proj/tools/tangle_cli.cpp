#include "tangle/tangle_c.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchema = "tangle-response/1";
constexpr double kRoofGapFloor = -1e-4;

// 0 success, 1 check failure, 2 usage error, 3 I/O error
int exit_code_for(tangle_status st)
{
    switch (st) {
        case TANGLE_OK: return 0;
        case TANGLE_ERR_INVALID:
        case TANGLE_ERR_DOMAIN: return 2;
        case TANGLE_ERR_IO: return 3;
        default: return 1;
    }
}

int report_error(tangle_status st)
{
    std::cerr << "error: " << tangle_last_error() << "\n";
    return exit_code_for(st);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t next = s.find(sep, pos);
        parts.push_back(s.substr(pos, next - pos));
        if (next == std::string::npos) return parts;
        pos = next + 1;
    }
}

int run_verify(double tolerance_scale, std::uint64_t seed)
{
    tangle_verify_result* res = nullptr;
    const tangle_status st = tangle_verify_run(tolerance_scale, seed, &res);
    if (st != TANGLE_OK) return report_error(st);

    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "verify";
    j["version"] = tangle_version();
    j["tolerance_scale"] = tolerance_scale;
    j["seed"] = seed;
    auto checks = ordered_json::array();
    for (size_t i = 0; i < tangle_verify_count(res); ++i) {
        tangle_check_info info;
        if (tangle_verify_check(res, i, &info) != TANGLE_OK) continue;
        checks.push_back({{"name", info.name},
                          {"residual", info.residual},
                          {"tolerance", info.tolerance},
                          {"pass", info.pass != 0}});
    }
    j["checks"] = std::move(checks);
    j["total"] = tangle_verify_count(res);
    j["failures"] = tangle_verify_failures(res);
    j["pass"] = tangle_verify_failures(res) == 0;
    std::cout << j.dump(2) << "\n";

    const bool ok = tangle_verify_failures(res) == 0;
    tangle_verify_free(res);
    return ok ? 0 : 1;
}

int run_report(double alpha, double beta, double gamma)
{
    tangle_report rep;
    const tangle_status st = tangle_lrt_report(alpha, beta, gamma, &rep);
    if (st != TANGLE_OK) return report_error(st);

    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "report";
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["gamma"] = gamma;
    j["tau"] = rep.tau;
    j["negativity"] = rep.negativity;
    j["omega_moduli"] = {rep.omega_moduli[0], rep.omega_moduli[1], rep.omega_moduli[2],
                         rep.omega_moduli[3]};
    j["eta"] = rep.eta;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_figure(int figure, int grid, std::uint64_t seed, const std::string& out,
               const std::string& format, int threads)
{
    tangle_sweep_config* cfg = tangle_sweep_config_create();
    if (!cfg) {
        std::cerr << "error: out of memory\n";
        return 1;
    }
    tangle_status st = TANGLE_OK;
    if (st == TANGLE_OK) st = tangle_sweep_config_set_grid(cfg, grid);
    if (st == TANGLE_OK) st = tangle_sweep_config_set_seed(cfg, seed);
    if (st == TANGLE_OK) st = tangle_sweep_config_set_format(cfg, format.c_str());
    if (st == TANGLE_OK) st = tangle_sweep_config_set_threads(cfg, threads);
    if (st == TANGLE_OK)
        st = tangle_write_figure(cfg, figure, out.empty() ? nullptr : out.c_str());
    tangle_sweep_config_free(cfg);
    return st == TANGLE_OK ? 0 : report_error(st);
}

int run_roof(const std::string& state, double q, int m, int restarts, std::uint64_t seed)
{
    const auto parts = split(state, ':');
    tangle_roof_summary sum;
    tangle_status st;
    try {
        if (parts.size() == 2 && parts[0] == "phi") {
            st = tangle_roof_2q(std::stod(parts[1]), q, m, restarts, seed, &sum);
        } else if (parts.size() == 4 && parts[0] == "sym") {
            st = tangle_roof_3q(std::stod(parts[1]), std::stod(parts[2]), std::stod(parts[3]), q,
                                m, restarts, seed, &sum);
        } else {
            std::cerr << "error: state must be phi:<theta> or sym:<alpha>:<beta>:<gamma>\n";
            return 2;
        }
    } catch (const std::exception&) {
        std::cerr << "error: state parameters must be numeric\n";
        return 2;
    }
    if (st != TANGLE_OK) return report_error(st);

    const bool pass = sum.gap >= kRoofGapFloor;
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "roof";
    j["state"] = state;
    j["q"] = q;
    j["m"] = m;
    j["restarts"] = restarts;
    j["seed"] = seed;
    j["oracle"] = sum.oracle;
    j["ansatz"] = sum.ansatz;
    j["gap"] = sum.gap;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entanglement decay under W-type noise: verification and figure data"};
    app.require_subcommand(1);

    double tol_scale = 1.0;
    std::uint64_t verify_seed = 20240101;
    auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
    verify->add_option("--tolerance-scale", tol_scale, "Multiply every check tolerance");
    verify->add_option("--seed", verify_seed, "Random-sample seed");

    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    auto* report = app.add_subcommand("report", "Tangle, negativity and decay rate of one state");
    report->add_option("--alpha", alpha)->required();
    report->add_option("--beta", beta)->required();
    report->add_option("--gamma", gamma)->required();

    struct FigArgs {
        int grid;
        std::uint64_t seed = 1;
        std::string out;
        std::string format = "csv";
        int threads = 0;
    };
    FigArgs fig_args[3];
    fig_args[0].grid = 40;
    fig_args[1].grid = 40;
    fig_args[2].grid = 101;
    const char* fig_help[3] = {"Decay rate vs tangle cloud and boundary curves",
                               "Average decay rates along both state families",
                               "Critical rescaled-noise curves"};
    CLI::App* figs[3];
    for (int f = 0; f < 3; ++f) {
        const std::string name = "fig" + std::to_string(f + 1);
        figs[f] = app.add_subcommand(name, fig_help[f]);
        figs[f]->add_option("--grid", fig_args[f].grid, "Grid density");
        figs[f]->add_option("--seed", fig_args[f].seed, "Sweep seed");
        figs[f]->add_option("--out", fig_args[f].out, "Output path (default stdout)");
        figs[f]->add_option("--format", fig_args[f].format, "csv or json");
        figs[f]->add_option("--threads", fig_args[f].threads, "Worker threads (0 = auto)");
    }

    std::string roof_state;
    double roof_q = 0.01;
    int roof_m = 0, roof_restarts = 64;
    std::uint64_t roof_seed = 1;
    auto* roof = app.add_subcommand("roof", "Convex-roof oracle vs the closed-form ansatz");
    roof->add_option("--state", roof_state, "phi:<theta> or sym:<alpha>:<beta>:<gamma>")->required();
    roof->add_option("--q", roof_q, "Noise weight");
    roof->add_option("--m", roof_m, "Ensemble size (0 = rank + 2)");
    roof->add_option("--restarts", roof_restarts, "Search restarts");
    roof->add_option("--seed", roof_seed, "Search seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (verify->parsed()) return run_verify(tol_scale, verify_seed);
    if (report->parsed()) return run_report(alpha, beta, gamma);
    for (int f = 0; f < 3; ++f)
        if (figs[f]->parsed())
            return run_figure(f + 1, fig_args[f].grid, fig_args[f].seed, fig_args[f].out,
                              fig_args[f].format, fig_args[f].threads);
    if (roof->parsed()) return run_roof(roof_state, roof_q, roof_m, roof_restarts, roof_seed);
    return 2;
}
