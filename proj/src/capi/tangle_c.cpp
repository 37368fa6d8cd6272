#include "tangle/tangle_c.h"

#include "core/critical.hpp"
#include "core/response.hpp"
#include "core/sweeps.hpp"
#include "core/verify.hpp"
#include "core/version.hpp"

#include <exception>
#include <fstream>
#include <iostream>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>

namespace {

thread_local std::string g_last_error;

template <class F>
tangle_status guarded(F&& body)
{
    try {
        g_last_error.clear();
        return std::forward<F>(body)();
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return TANGLE_ERR_INVALID;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return TANGLE_ERR_DOMAIN;
    } catch (const std::ios_base::failure& e) {
        g_last_error = e.what();
        return TANGLE_ERR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TANGLE_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return TANGLE_ERR_INTERNAL;
    }
}

tangle_status invalid(const char* msg)
{
    g_last_error = msg;
    return TANGLE_ERR_INVALID;
}

} // namespace

struct tangle_verify_result {
    tangle::verify::Suite suite;
};

struct tangle_sweep_config {
    tangle::sweeps::SweepConfig cfg;
};

extern "C" {

const char* tangle_version(void)
{
    return tangle::kVersionString;
}

const char* tangle_last_error(void)
{
    return g_last_error.c_str();
}

tangle_status tangle_lrt_report(double alpha, double beta, double gamma, tangle_report* out)
{
    if (!out) return invalid("tangle_lrt_report: null output");
    return guarded([&] {
        const auto rep = tangle::response::lrt({alpha, beta, gamma});
        out->tau = rep.tau;
        out->negativity = rep.negativity;
        for (int i = 0; i < 4; ++i) out->omega_moduli[i] = rep.omega_moduli[i];
        out->eta = rep.eta;
        return TANGLE_OK;
    });
}

tangle_status tangle_verify_run(double tolerance_scale, uint64_t seed, tangle_verify_result** out)
{
    if (!out) return invalid("tangle_verify_run: null output");
    if (!(tolerance_scale > 0.0)) return invalid("tangle_verify_run: tolerance scale must be positive");
    return guarded([&] {
        auto* r = new tangle_verify_result{tangle::verify::run_suite(tolerance_scale, seed)};
        *out = r;
        return TANGLE_OK;
    });
}

size_t tangle_verify_count(const tangle_verify_result* r)
{
    return r ? r->suite.checks.size() : 0;
}

size_t tangle_verify_failures(const tangle_verify_result* r)
{
    return r ? static_cast<size_t>(r->suite.failures()) : 0;
}

tangle_status tangle_verify_check(const tangle_verify_result* r, size_t index,
                                  tangle_check_info* out)
{
    if (!r || !out) return invalid("tangle_verify_check: null argument");
    if (index >= r->suite.checks.size()) return invalid("tangle_verify_check: index out of range");
    const auto& c = r->suite.checks[index];
    out->name = c.name.c_str();
    out->residual = c.residual;
    out->tolerance = c.tolerance;
    out->pass = c.pass ? 1 : 0;
    g_last_error.clear();
    return TANGLE_OK;
}

void tangle_verify_free(tangle_verify_result* r)
{
    delete r;
}

tangle_sweep_config* tangle_sweep_config_create(void)
{
    return new (std::nothrow) tangle_sweep_config{};
}

void tangle_sweep_config_free(tangle_sweep_config* cfg)
{
    delete cfg;
}

tangle_status tangle_sweep_config_set_grid(tangle_sweep_config* cfg, int grid)
{
    if (!cfg) return invalid("set_grid: null config");
    if (grid < 2) return invalid("set_grid: grid density must be at least 2");
    cfg->cfg.grid = grid;
    g_last_error.clear();
    return TANGLE_OK;
}

tangle_status tangle_sweep_config_set_seed(tangle_sweep_config* cfg, uint64_t seed)
{
    if (!cfg) return invalid("set_seed: null config");
    cfg->cfg.seed = seed;
    g_last_error.clear();
    return TANGLE_OK;
}

tangle_status tangle_sweep_config_set_format(tangle_sweep_config* cfg, const char* format)
{
    if (!cfg || !format) return invalid("set_format: null argument");
    const std::string f = format;
    if (f != "csv" && f != "json") return invalid("set_format: format must be csv or json");
    cfg->cfg.format = f;
    g_last_error.clear();
    return TANGLE_OK;
}

tangle_status tangle_sweep_config_set_threads(tangle_sweep_config* cfg, int threads)
{
    if (!cfg) return invalid("set_threads: null config");
    if (threads < 0) return invalid("set_threads: thread count must be nonnegative");
    cfg->cfg.threads = threads;
    g_last_error.clear();
    return TANGLE_OK;
}

tangle_status tangle_write_figure(const tangle_sweep_config* cfg, int figure, const char* path)
{
    if (!cfg) return invalid("tangle_write_figure: null config");
    if (figure < 1 || figure > 3) return invalid("tangle_write_figure: figure must be 1, 2 or 3");
    return guarded([&] {
        tangle::sweeps::Table table;
        switch (figure) {
            case 1: table = tangle::sweeps::fig1(cfg->cfg); break;
            case 2: table = tangle::sweeps::fig2(cfg->cfg); break;
            default: table = tangle::sweeps::fig3(cfg->cfg); break;
        }
        if (path) {
            std::ofstream os(path);
            if (!os) throw std::ios_base::failure(std::string("cannot open ") + path);
            tangle::sweeps::write_table(table, cfg->cfg.format, os);
            os.flush();
            if (!os) throw std::ios_base::failure(std::string("write failed for ") + path);
        } else {
            tangle::sweeps::write_table(table, cfg->cfg.format, std::cout);
            std::cout.flush();
        }
        return TANGLE_OK;
    });
}

tangle_status tangle_roof_2q(double theta, double q, int m, int restarts, uint64_t seed,
                             tangle_roof_summary* out)
{
    if (!out) return invalid("tangle_roof_2q: null output");
    if (restarts < 1) return invalid("tangle_roof_2q: restarts must be positive");
    return guarded([&] {
        const auto rho = tangle::states::mix(tangle::states::phi(theta),
                                             tangle::states::noise_op_2q(), q);
        const auto roof =
            tangle::measures::convex_roof(rho, tangle::measures::concurrence_pure, m, restarts, seed);
        out->oracle = roof.value;
        out->ansatz = tangle::response::exact_concurrence_curve(theta, q);
        out->gap = out->ansatz - out->oracle;
        return TANGLE_OK;
    });
}

tangle_status tangle_roof_3q(double alpha, double beta, double gamma, double q, int m,
                             int restarts, uint64_t seed, tangle_roof_summary* out)
{
    if (!out) return invalid("tangle_roof_3q: null output");
    if (restarts < 1) return invalid("tangle_roof_3q: restarts must be positive");
    return guarded([&] {
        const tangle::states::SymParams p{alpha, beta, gamma};
        const auto tangle_measure = [](const tangle::states::Ket& k) {
            return tangle::measures::tangle_pure(k);
        };
        const auto rho = tangle::states::mix(tangle::states::sym_state(p),
                                             tangle::states::noise_op_3q(0.5), q);
        const auto roof = tangle::measures::convex_roof(rho, tangle_measure, m, restarts, seed);
        out->oracle = roof.value;
        if (q == 0.0) {
            out->ansatz = tangle::measures::tangle_pure(tangle::states::sym_state(p));
        } else {
            out->ansatz = tangle::measures::ensemble_average(
                tangle::response::optimal_ensemble_3q(p, q), tangle_measure);
        }
        out->gap = out->ansatz - out->oracle;
        return TANGLE_OK;
    });
}

} // extern "C"
