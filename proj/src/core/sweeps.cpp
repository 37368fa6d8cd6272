#include "core/sweeps.hpp"

#include "core/critical.hpp"
#include "core/response.hpp"
#include "core/rng.hpp"
#include "core/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace tangle::sweeps {
namespace {

using linalg::SplitMix64;
using states::SymParams;

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string make_comment(const char* cmd, const SweepConfig& cfg)
{
    std::string s = "tangle-response ";
    s += kVersionString;
    s += " cmd=";
    s += cmd;
    s += " grid=" + std::to_string(cfg.grid);
    s += " seed=" + std::to_string(cfg.seed);
    s += " format=" + cfg.format;
    return s;
}

void require_grid(const SweepConfig& cfg, int minimum)
{
    if (cfg.grid < minimum)
        throw std::invalid_argument("sweep: grid density below " + std::to_string(minimum));
}

double min_chord_excess(std::vector<std::pair<double, double>> pts)
{
    std::sort(pts.begin(), pts.end());
    double mn = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const auto& [x0, y0] = pts[i - 1];
        const auto& [x1, y1] = pts[i];
        const auto& [x2, y2] = pts[i + 1];
        mn = std::min(mn, y0 + (y2 - y0) * (x1 - x0) / (x2 - x0) - y1);
    }
    return mn;
}

} // namespace

void parallel_for(int n, int threads, const std::function<void(int)>& fn)
{
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

Table fig1(const SweepConfig& cfg)
{
    require_grid(cfg, 2);
    const int ncloud = cfg.grid * cfg.grid;
    const int ncurve = cfg.grid;

    Table t;
    t.name = "fig1";
    t.comment = make_comment("fig1", cfg);
    t.columns = {"alpha", "beta", "gamma", "tau", "negativity", "eta", "family"};
    t.rows.resize(ncloud + 2 * ncurve);

    parallel_for(static_cast<int>(t.rows.size()), cfg.threads, [&](int i) {
        SymParams p{};
        const char* family;
        if (i < ncloud) {
            auto g = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(i));
            p = {g.uniform(0.0, kPi / 2), g.uniform(0.0, kPi / 2), g.uniform(-kPi / 2, kPi / 2)};
            family = "sym";
        } else if (i < ncloud + ncurve) {
            const int j = i - ncloud;
            p = {kPi / 2, kPi / 4 * j / (ncurve - 1), 0.0};
            family = "G";
        } else {
            const int j = i - ncloud - ncurve;
            p = {kPi / 2 * j / (ncurve - 1), 0.0, 0.0};
            family = "J";
        }
        const auto rep = response::lrt(p);
        t.rows[i] = {p.alpha, p.beta, p.gamma, rep.tau, rep.negativity, rep.eta,
                     std::string(family)};
    });
    return t;
}

Table fig2(const SweepConfig& cfg)
{
    require_grid(cfg, 4);
    const int ng = cfg.grid;
    const int nj_log = cfg.grid / 2;
    const int nj_uni = cfg.grid - nj_log;

    Table t;
    t.name = "fig2";
    t.comment = make_comment("fig2", cfg);
    t.columns = {"family", "param", "tau", "q_c", "avg_decay"};
    t.rows.resize(ng + nj_log + nj_uni);

    // The J branch needs a logarithmic tail: avg_decay approaches 4/3 only as
    // alpha^(1/2), so uniform spacing cannot get within 1% of the limit.
    const double lg_lo = std::log(1e-5), lg_hi = std::log(kPi / 6);
    parallel_for(static_cast<int>(t.rows.size()), cfg.threads, [&](int i) {
        if (i < ng) {
            const double beta = 0.05 + (kPi / 4 - 0.05) * i / (ng - 1);
            const auto res = critical::critical_q_G(beta, 0.0);
            const double tau = measures::tangle_pure(states::g_state(beta, 0.0));
            t.rows[i] = {std::string("G"), beta, tau, res.q_c, res.avg_decay};
        } else {
            const int j = i - ng;
            double alpha;
            if (j < nj_log)
                alpha = std::exp(lg_lo + (lg_hi - lg_lo) * j / (nj_log - 1));
            else
                alpha = kPi / 6 + (1.45 - kPi / 6) * (j - nj_log + 1) / nj_uni;
            const auto res = critical::critical_q_J(alpha);
            const double tau = measures::tangle_pure(states::j_state(alpha));
            t.rows[i] = {std::string("J"), alpha, tau, res.q_c, res.avg_decay};
        }
    });
    return t;
}

Table fig3(const SweepConfig& cfg)
{
    require_grid(cfg, 3);
    const int n = cfg.grid;

    Table t;
    t.name = "fig3";
    t.comment = make_comment("fig3", cfg);
    t.columns = {"family", "p", "q_tilde_c", "x", "y", "convex"};
    t.rows.resize(2 * n);

    std::vector<double> qt(2 * n);
    parallel_for(2 * n, cfg.threads, [&](int i) {
        const auto family = i < n ? critical::Family::G : critical::Family::J;
        const double p = 0.01 + (0.99 - 0.01) * (i % n) / (n - 1);
        qt[i] = critical::critical_qtilde(family, p);
    });

    double convex[2];
    for (int f = 0; f < 2; ++f) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < n; ++i) {
            const double p = 0.01 + (0.99 - 0.01) * i / (n - 1);
            pts.emplace_back(qt[f * n + i] * p, qt[f * n + i] * (1.0 - p));
        }
        convex[f] = min_chord_excess(std::move(pts)) >= -1e-9 ? 1.0 : 0.0;
    }

    for (int i = 0; i < 2 * n; ++i) {
        const int f = i < n ? 0 : 1;
        const double p = 0.01 + (0.99 - 0.01) * (i % n) / (n - 1);
        t.rows[i] = {std::string(f == 0 ? "G" : "J"), p, qt[i], qt[i] * p, qt[i] * (1.0 - p),
                     convex[f]};
    }
    return t;
}

void write_csv(const Table& t, std::ostream& os)
{
    os << "# " << t.comment << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i]))
                os << fmt17(*d);
            else
                os << std::get<std::string>(row[i]);
            os << (i + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_json(const Table& t, std::ostream& os)
{
    nlohmann::ordered_json j;
    j["schema"] = kSchemaString;
    j["name"] = t.name;
    j["comment"] = t.comment;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (const double* d = std::get_if<double>(&cell))
                jr.push_back(*d);
            else
                jr.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

void write_table(const Table& t, const std::string& format, std::ostream& os)
{
    if (format == "csv") write_csv(t, os);
    else if (format == "json") write_json(t, os);
    else throw std::invalid_argument("write_table: unknown format " + format);
}

} // namespace tangle::sweeps
