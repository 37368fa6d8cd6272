#include "core/critical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace tangle::critical {
namespace {

using linalg::CMatrix;
using linalg::CVector;
using linalg::complexd;
using states::Ket;
using Vec8 = Eigen::Matrix<complexd, 8, 1>;
using Mat8 = Eigen::Matrix<complexd, 8, 8>;
using P6 = std::array<double, 6>;

constexpr double kPi = std::numbers::pi;
constexpr double kRangeSlack = 1e-12;
constexpr double kRootTol = 1e-12;

void check_range(double v, double lo, double hi, const char* what)
{
    if (!(v >= lo - kRangeSlack && v <= hi + kRangeSlack))
        throw std::domain_error(std::string(what) + ": parameter out of range");
}

const std::array<Mat8, 3>& quartic_forms()
{
    static const std::array<Mat8, 3> forms = [] {
        const CMatrix sy = linalg::sigma_y();
        std::array<Mat8, 3> f;
        f[0] = linalg::kron3(linalg::sigma0(), sy, sy);
        f[1] = linalg::kron3(linalg::sigma_x(), sy, sy);
        f[2] = linalg::kron3(linalg::sigma_z(), sy, sy);
        return f;
    }();
    return forms;
}

Ket family_base(Family f)
{
    return f == Family::G ? states::g_tilde() : states::j_tilde();
}

// Characteristic family member with the noise weights folded into e[k]; the
// member is unit norm for every (mu, nu, theta) by construction.
struct CharFamily {
    Vec8 b0;
    std::array<Vec8, 4> e;

    double tau(const P6& x) const
    {
        const Vec8 v = b0 + std::cos(x[0]) * std::polar(1.0, x[2]) * e[0]
                          + std::sin(x[0]) * std::polar(1.0, x[3]) * e[1]
                          + std::cos(x[1]) * std::polar(1.0, x[4]) * e[2]
                          + std::sin(x[1]) * std::polar(1.0, x[5]) * e[3];
        complexd amp = 0.0;
        for (const auto& m : quartic_forms()) {
            const complexd bil = (v.transpose() * (m * v))(0, 0);
            amp += bil * bil;
        }
        return std::abs(amp);
    }
};

CharFamily make_char(Family f, double q_tilde, double p)
{
    CharFamily c;
    c.b0 = std::sqrt(1.0 - q_tilde) * family_base(f).amps;
    for (int k = 0; k < 4; ++k) {
        const double w = q_tilde * (k < 2 ? p : 1.0 - p);
        c.e[k] = std::sqrt(w) * states::noise_basis(k + 1).amps;
    }
    return c;
}

template <class F>
double golden_min(const F& f, double a, double b, double& xbest)
{
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 70; ++i) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    if (f1 <= f2) { xbest = x1; return f1; }
    xbest = x2;
    return f2;
}

double coordinate_descent(const CharFamily& c, P6& x)
{
    double best = c.tau(x);
    for (int sweep = 0; sweep < 80; ++sweep) {
        const double before = best;
        for (int i = 0; i < 6; ++i) {
            const bool angle = i >= 2;
            const double period = angle ? 2.0 * kPi : kPi / 2.0;
            const int n = 16;
            const double step = period / n;
            double tbest = x[i];
            double fbest = best;
            for (int j = 0; j <= (angle ? n - 1 : n); ++j) {
                P6 xx = x;
                xx[i] = j * step;
                const double ft = c.tau(xx);
                if (ft < fbest) { fbest = ft; tbest = xx[i]; }
            }
            const auto f1d = [&](double t) {
                P6 xx = x;
                xx[i] = t;
                return c.tau(xx);
            };
            double xr = tbest;
            const double fr = golden_min(f1d, tbest - step, tbest + step, xr);
            if (fr < fbest) { fbest = fr; tbest = xr; }
            if (fbest < best) { best = fbest; x[i] = tbest; }
        }
        if (before - best < 1e-15) break;
    }
    return best;
}

double nelder_mead(const std::function<double(const P6&)>& f, P6& x, double scale, int max_iter)
{
    constexpr int n = 6;
    std::array<P6, n + 1> v;
    std::array<double, n + 1> fv;
    v.fill(x);
    for (int i = 1; i <= n; ++i) v[i][i - 1] += scale;
    for (int i = 0; i <= n; ++i) fv[i] = f(v[i]);

    const auto order = [&] {
        std::array<int, n + 1> idx;
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::array<P6, n + 1> v2;
        std::array<double, n + 1> f2;
        for (int i = 0; i <= n; ++i) { v2[i] = v[idx[i]]; f2[i] = fv[idx[i]]; }
        v = v2;
        fv = f2;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        order();
        if (fv[n] - fv[0] < 1e-15) break;
        P6 cen{};
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) cen[d] += v[i][d] / n;
        const auto along = [&](double t) {
            P6 pnt;
            for (int d = 0; d < n; ++d) pnt[d] = cen[d] + t * (v[n][d] - cen[d]);
            return pnt;
        };
        const P6 xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            const P6 xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) { v[n] = xe; fv[n] = fe; }
            else { v[n] = xr; fv[n] = fr; }
        } else if (fr < fv[n - 1]) {
            v[n] = xr;
            fv[n] = fr;
        } else {
            const P6 xc = along(0.5);
            const double fc = f(xc);
            if (fc < fv[n]) { v[n] = xc; fv[n] = fc; }
            else {
                for (int i = 1; i <= n; ++i) {
                    for (int d = 0; d < n; ++d) v[i][d] = v[0][d] + 0.5 * (v[i][d] - v[0][d]);
                    fv[i] = f(v[i]);
                }
            }
        }
    }
    order();
    x = v[0];
    return fv[0];
}

struct SectorData {
    double n;  // |A psi|^2
    double k;  // (|x|^2 + 1/|x|^2)/2
    double p;  // |x|^4 / (1 + |x|^4)
};

SectorData sector_data(const Ket& psi, complexd x)
{
    SectorData s;
    const CMatrix a = states::local_A(x);
    s.n = (a * psi.amps).squaredNorm();
    const double ax2 = std::norm(x);
    s.k = (ax2 + 1.0 / ax2) / 2.0;
    const double x4 = ax2 * ax2;
    s.p = x4 / (1.0 + x4);
    return s;
}

RescaledParams rescaled_common(const SectorData& s, double q)
{
    RescaledParams r;
    r.p = s.p;
    r.q_tilde = q * s.k / ((1.0 - q) * s.n + q * s.k);
    return r;
}

CriticalResult critical_common(const Ket& psi, complexd x, Family f)
{
    const SectorData s = sector_data(psi, x);
    CriticalResult res;
    res.q_tilde_c = critical_qtilde(f, s.p);

    const auto qtilde_of = [&](double q) { return q * s.k / ((1.0 - q) * s.n + q * s.k); };
    const auto h = [&](double q) { return qtilde_of(q) - res.q_tilde_c; };

    const int grid = 1000;
    bool monotone = true;
    std::vector<double> roots;
    double pq = 0.0, pv = h(0.0), pqt = qtilde_of(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double q = static_cast<double>(i) / grid;
        const double qt = qtilde_of(q);
        if (qt < pqt - 1e-12) monotone = false;
        const double hv = qt - res.q_tilde_c;
        if ((pv <= 0.0 && hv >= 0.0) || (pv >= 0.0 && hv <= 0.0)) {
            double lo = pq, hi = q;
            double flo = pv;
            while (hi - lo > kRootTol) {
                const double mid = (lo + hi) / 2.0;
                const double fm = h(mid);
                if ((flo <= 0.0) == (fm <= 0.0)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            roots.push_back((lo + hi) / 2.0);
        }
        pq = q;
        pv = hv;
        pqt = qt;
    }
    if (roots.empty())
        throw std::domain_error("critical_q: no q maps to the critical rescaled noise");
    if (!monotone)
        std::cerr << "critical_q: noise map not monotone, keeping smallest of " << roots.size()
                  << " roots\n";
    res.q_c = *std::min_element(roots.begin(), roots.end());
    res.avg_decay = measures::tangle_pure(psi) / res.q_c;
    return res;
}

} // namespace

RescaledParams rescaled_params_G(double beta, double gamma, double q)
{
    check_range(q, 0.0, 1.0, "rescaled_params_G q");
    return rescaled_common(sector_data(states::g_state(beta, gamma), states::x_G(beta, gamma)), q);
}

RescaledParams rescaled_params_J(double alpha, double q)
{
    check_range(q, 0.0, 1.0, "rescaled_params_J q");
    return rescaled_common(sector_data(states::j_state(alpha), states::x_J(alpha)), q);
}

double tau_tilde_raw(Family f, double q_tilde, double p)
{
    check_range(q_tilde, 0.0, 1.0, "tau_tilde q_tilde");
    check_range(p, 0.0, 1.0, "tau_tilde p");
    const double qt = std::clamp(q_tilde, 0.0, 1.0);
    const double pc = std::clamp(p, 0.0, 1.0);
    const double s6 = std::sqrt(6.0);
    if (f == Family::G) {
        const double t1 = 9.0 * (1.0 - qt) * (1.0 - qt);
        const double t2 = 12.0 * (1.0 - pc) * pc * qt * qt;
        const double t3 = 8.0 * s6 * std::sqrt(1.0 - qt) * std::pow(qt, 1.5) * std::pow(1.0 - pc, 1.5);
        const double t4 = 2.0 * std::sqrt(pc)
                        * (18.0 * std::sqrt(1.0 - pc) * (1.0 - qt) * qt
                           + 4.0 * pc * s6 * std::sqrt(1.0 - qt) * std::pow(qt, 1.5));
        return (t1 - t2 - t3 - t4) / 9.0;
    }
    const double t1 = 9.0 - 36.0 * qt + 3.0 * (9.0 - 4.0 * pc + 4.0 * pc * pc) * qt * qt;
    const double t2 = 4.0 * s6 * (1.0 + 2.0 * pc) * std::sqrt((1.0 - pc) * (1.0 - qt) * qt * qt * qt);
    return (t1 - t2) / 9.0;
}

double tau_tilde_G(double q_tilde, double p)
{
    return std::max(0.0, tau_tilde_raw(Family::G, q_tilde, p));
}

double tau_tilde_J(double q_tilde, double p)
{
    return std::max(0.0, tau_tilde_raw(Family::J, q_tilde, p));
}

double characteristic_min(Family f, double q_tilde, double p)
{
    check_range(q_tilde, 0.0, 1.0, "characteristic_min q_tilde");
    check_range(p, 0.0, 1.0, "characteristic_min p");
    const CharFamily c = make_char(f, std::clamp(q_tilde, 0.0, 1.0), std::clamp(p, 0.0, 1.0));

    const std::array<std::pair<double, double>, 5> amp_seeds = {{
        {kPi / 4, kPi / 4}, {0.0, 0.0}, {kPi / 2, kPi / 2}, {0.0, kPi / 2}, {kPi / 2, 0.0}}};

    double global = std::numeric_limits<double>::infinity();
    for (const auto& [mu, nu] : amp_seeds) {
        const double amps[4] = {std::cos(mu), std::sin(mu), std::cos(nu), std::sin(nu)};
        int counts[4];
        for (int k = 0; k < 4; ++k) counts[k] = std::abs(amps[k]) > 1e-12 ? 16 : 1;

        P6 seed{mu, nu, 0.0, 0.0, 0.0, 0.0};
        double seed_val = std::numeric_limits<double>::infinity();
        P6 x{mu, nu, 0.0, 0.0, 0.0, 0.0};
        for (int i0 = 0; i0 < counts[0]; ++i0) {
            x[2] = i0 * 2.0 * kPi / 16;
            for (int i1 = 0; i1 < counts[1]; ++i1) {
                x[3] = i1 * 2.0 * kPi / 16;
                for (int i2 = 0; i2 < counts[2]; ++i2) {
                    x[4] = i2 * 2.0 * kPi / 16;
                    for (int i3 = 0; i3 < counts[3]; ++i3) {
                        x[5] = i3 * 2.0 * kPi / 16;
                        const double ft = c.tau(x);
                        if (ft < seed_val) { seed_val = ft; seed = x; }
                    }
                }
            }
        }

        coordinate_descent(c, seed);
        const double v = nelder_mead([&c](const P6& y) { return c.tau(y); }, seed, 0.05, 4000);
        global = std::min(global, v);
    }
    return global;
}

Ensemble optimal_ensemble_Gtilde(double q_tilde, double p)
{
    check_range(q_tilde, 0.0, 1.0, "optimal_ensemble_Gtilde q_tilde");
    check_range(p, 0.0, 1.0, "optimal_ensemble_Gtilde p");
    const CVector base = states::g_tilde().amps;
    std::array<CVector, 4> noise;
    for (int k = 0; k < 4; ++k) noise[k] = states::noise_basis(k + 1).amps;

    const double s1 = std::sqrt(1.0 - q_tilde), sq = std::sqrt(q_tilde);
    const double sp = std::sqrt(p), s1p = std::sqrt(1.0 - p);
    const double thetas[3] = {kPi / 3, kPi, -kPi / 3};

    Ensemble e;
    for (double t1 : thetas) {
        const double t3 = -2.0 * kPi / 3 - t1;
        CVector v = s1 * base
                  + sq * (sp * std::polar(1.0, t1) * noise[0] + s1p * std::polar(1.0, t3) * noise[2]);
        e.members.emplace_back(1.0 / 6.0, Ket{3, v / v.norm()});
    }
    for (double t2 : thetas) {
        const double t4 = 2.0 * kPi / 3 - t2;
        CVector v = s1 * base
                  + sq * (sp * std::polar(1.0, t2) * noise[1] + s1p * std::polar(1.0, t4) * noise[3]);
        e.members.emplace_back(1.0 / 6.0, Ket{3, v / v.norm()});
    }
    return e;
}

Ensemble optimal_ensemble_Jtilde(double q_tilde, double p)
{
    check_range(q_tilde, 0.0, 1.0, "optimal_ensemble_Jtilde q_tilde");
    check_range(p, 0.0, 1.0, "optimal_ensemble_Jtilde p");
    const CVector base = states::j_tilde().amps;
    std::array<CVector, 4> noise;
    for (int k = 0; k < 4; ++k) noise[k] = states::noise_basis(k + 1).amps;

    const double s1 = std::sqrt(1.0 - q_tilde), sqh = std::sqrt(q_tilde / 2.0);
    const double sp = std::sqrt(p), s1p = std::sqrt(1.0 - p);

    Ensemble e;
    for (int j = 0; j < 6; ++j) {
        const double d1 = j * kPi / 3;
        const double d2 = kPi - d1;
        const double d3 = 2.0 * d1 + kPi / 3;
        const double d4 = -d3;
        CVector v = s1 * base
                  + sqh * (sp * (std::polar(1.0, d1) * noise[0] + std::polar(1.0, d2) * noise[1])
                           + s1p * (std::polar(1.0, d3) * noise[2] + std::polar(1.0, d4) * noise[3]));
        e.members.emplace_back(1.0 / 6.0, Ket{3, v / v.norm()});
    }
    return e;
}

double critical_qtilde(Family f, double p)
{
    check_range(p, 0.0, 1.0, "critical_qtilde p");
    const auto g = [&](double qt) { return tau_tilde_raw(f, qt, p); };
    if (g(0.0) <= 0.0) return 0.0;
    const int grid = 1000;
    for (int i = 1; i <= grid; ++i) {
        const double q = static_cast<double>(i) / grid;
        if (g(q) <= 0.0) {
            double lo = static_cast<double>(i - 1) / grid, hi = q;
            while (hi - lo > kRootTol) {
                const double mid = (lo + hi) / 2.0;
                if (g(mid) > 0.0) lo = mid;
                else hi = mid;
            }
            return (lo + hi) / 2.0;
        }
    }
    throw std::domain_error("critical_qtilde: expression does not change sign on [0,1]");
}

CriticalResult critical_q_G(double beta, double gamma)
{
    return critical_common(states::g_state(beta, gamma), states::x_G(beta, gamma), Family::G);
}

CriticalResult critical_q_J(double alpha)
{
    return critical_common(states::j_state(alpha), states::x_J(alpha), Family::J);
}

} // namespace tangle::critical
