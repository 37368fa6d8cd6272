#include "core/verify.hpp"

#include "core/critical.hpp"
#include "core/response.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace tangle::verify {
namespace {

using linalg::CMatrix;
using linalg::CVector;
using linalg::complexd;
using linalg::SplitMix64;
using states::Ket;
using states::SymParams;

constexpr double kPi = std::numbers::pi;

struct Ctx {
    double scale;
    std::uint64_t seed;
    std::vector<Check> checks;

    void add(std::string name, double residual, double tol)
    {
        const double t = tol * scale;
        checks.push_back({std::move(name), residual, t, residual <= t});
    }

    SplitMix64 rng(std::uint64_t idx) const { return SplitMix64::stream(seed, idx); }
};

SymParams random_params(SplitMix64& g)
{
    return {g.uniform(0.0, kPi / 2), g.uniform(0.0, kPi / 2), g.uniform(-kPi / 2, kPi / 2)};
}

CVector random_vector(SplitMix64& g, int dim)
{
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = g.next_complex_gaussian();
    return v;
}

Ket random_ket(SplitMix64& g, int n_qubits)
{
    CVector v = random_vector(g, 1 << n_qubits);
    return {n_qubits, v / v.norm()};
}

CMatrix random_symmetric(SplitMix64& g, int dim)
{
    CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = g.next_complex_gaussian();
    return (m + m.transpose()) / 2.0;
}

double max_abs(const CMatrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

double trace_norm(const CMatrix& hermitian)
{
    return linalg::herm_eig(hermitian).values.cwiseAbs().sum();
}

// Curve lies below every chord iff all excesses are nonnegative.
double min_chord_excess(std::vector<std::pair<double, double>> pts)
{
    std::sort(pts.begin(), pts.end());
    double mn = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const auto& [x0, y0] = pts[i - 1];
        const auto& [x1, y1] = pts[i];
        const auto& [x2, y2] = pts[i + 1];
        const double chord = y0 + (y2 - y0) * (x1 - x0) / (x2 - x0);
        mn = std::min(mn, chord - y1);
    }
    return mn;
}

void check_linalg(Ctx& c)
{
    auto g = c.rng(1);
    double recon = 0.0, moduli = 0.0;
    for (int t = 0; t < 60; ++t) {
        const CMatrix s = random_symmetric(g, 4);
        const auto tak = linalg::takagi(s);
        recon = std::max(recon,
                         max_abs(tak.u.transpose() * tak.omega.asDiagonal() * tak.u - s));
        Eigen::JacobiSVD<CMatrix> svd(s);
        Eigen::VectorXd sv = svd.singularValues();
        Eigen::VectorXd om = tak.omega.cwiseAbs();
        std::sort(sv.data(), sv.data() + sv.size());
        std::sort(om.data(), om.data() + om.size());
        moduli = std::max(moduli, (sv - om).cwiseAbs().maxCoeff());
    }
    c.add("takagi_reconstruction", recon, 1e-8);
    c.add("takagi_moduli", moduli, 1e-8);

    double eig_res = 0.0;
    for (int t = 0; t < 50; ++t) {
        CMatrix m(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) m(i, j) = g.next_complex_gaussian();
        const CMatrix h = (m + m.adjoint()) / 2.0;
        const auto eig = linalg::herm_eig(h);
        eig_res = std::max(eig_res,
                           max_abs(h * eig.vectors - eig.vectors * eig.values.asDiagonal().toDenseMatrix().cast<complexd>()));
        eig_res = std::max(eig_res, max_abs(eig.vectors.adjoint() * eig.vectors - CMatrix::Identity(8, 8)));
    }
    c.add("herm_eig_accuracy", eig_res, 1e-10);

    double sqrt_res = 0.0;
    for (int t = 0; t < 20; ++t) {
        CMatrix m(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) m(i, j) = g.next_complex_gaussian();
        const CMatrix h = m * m.adjoint() / 6.0;
        const CMatrix e = linalg::sqrt_psd(h);
        sqrt_res = std::max(sqrt_res, max_abs(e * e - h));
    }
    c.add("sqrt_psd_roundtrip", sqrt_res, 1e-10);

    double iso = 0.0, det_res = 0.0;
    const std::pair<int, int> sizes[4] = {{8, 4}, {6, 3}, {10, 8}, {16, 5}};
    for (int t = 0; t < 4; ++t) {
        const auto [m, r] = sizes[t];
        const CMatrix v = linalg::haar_isometry(m, r, 100 + t);
        iso = std::max(iso, max_abs(v.adjoint() * v - CMatrix::Identity(r, r)));
        det_res = std::max(det_res, max_abs(v - linalg::haar_isometry(m, r, 100 + t)));
    }
    c.add("haar_isometry_columns", iso, 1e-12);
    c.add("haar_isometry_deterministic", det_res, 1e-15);

    double pt_res = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Ket k = random_ket(g, 3);
        const CMatrix rho = k.amps * k.amps.adjoint();
        for (int cut = 1; cut <= 3; ++cut) {
            std::vector<int> others;
            for (int q = 1; q <= 3; ++q)
                if (q != cut) others.push_back(q);
            const CMatrix r1 = linalg::partial_trace(rho, 3, others);
            pt_res = std::max(pt_res, std::abs(r1.trace().real() - 1.0));
            pt_res = std::max(pt_res, max_abs(r1 - r1.adjoint()));
        }
        const CMatrix two_step =
            linalg::partial_trace(linalg::partial_trace(rho, 3, {3}), 2, {2});
        const CMatrix one_step = linalg::partial_trace(rho, 3, {2, 3});
        pt_res = std::max(pt_res, max_abs(two_step - one_step));
    }
    c.add("partial_trace_consistency", pt_res, 1e-12);
}

void check_states(Ctx& c)
{
    auto g = c.rng(2);
    double gram_res = 0.0;
    for (int t = 0; t < 100; ++t) {
        const SymParams p = random_params(g);
        CMatrix frame(8, 5);
        frame.col(0) = states::sym_state(p).amps;
        for (int k = 1; k <= 4; ++k) frame.col(k) = states::noise_basis(k).amps;
        gram_res = std::max(gram_res, max_abs(frame.adjoint() * frame - CMatrix::Identity(5, 5)));
    }
    c.add("noise_frame_orthonormal", gram_res, 1e-12);

    double zt = 0.0;
    for (int k = 1; k <= 4; ++k) zt = std::max(zt, measures::tangle_pure(states::noise_basis(k)));
    c.add("noise_zero_tangle", zt, 1e-12);

    double tr_res = std::abs(states::noise_op_2q().rho.trace().real() - 1.0);
    for (double p : {0.0, 0.25, 0.5, 0.9, 1.0})
        tr_res = std::max(tr_res, std::abs(states::noise_op_3q(p).rho.trace().real() - 1.0));
    c.add("noise_op_trace", tr_res, 1e-12);
}

void check_measures(Ctx& c)
{
    auto g = c.rng(3);
    double pure_res = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Ket k = random_ket(g, 2);
        const states::MixedState rho{2, k.amps * k.amps.adjoint()};
        pure_res = std::max(pure_res,
                            std::abs(measures::concurrence_wootters(rho) - measures::concurrence_pure(k)));
    }
    c.add("wootters_pure_match", pure_res, 1e-10);

    double curve_res = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double theta = 0.05 + (kPi / 4 - 0.05) * i / 11.0;
        for (int j = 0; j < 10; ++j) {
            const double q = 0.9 * j / 9.0;
            const auto rho = states::mix(states::phi(theta), states::noise_op_2q(), q);
            curve_res = std::max(curve_res,
                                 std::abs(measures::concurrence_wootters(rho)
                                          - response::exact_concurrence_curve(theta, q)));
        }
    }
    c.add("wootters_exact_curve", curve_res, 1e-10);

    double slope_res = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double theta = 0.05 + (kPi / 4 - 0.05) * i / 5.0;
        const double c0 = std::sin(2.0 * theta);
        const auto slope_at = [&](double q) {
            const auto rho = states::mix(states::phi(theta), states::noise_op_2q(), q);
            return (c0 - measures::concurrence_wootters(rho)) / q;
        };
        const double rich = (10.0 * slope_at(1e-4) - slope_at(1e-3)) / 9.0;
        slope_res = std::max(slope_res, std::abs(rich - response::lrc(theta)));
    }
    c.add("lrc_richardson_slope", slope_res, 1e-5);

    double neg_res = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Ket k = random_ket(g, 3);
        for (int cut = 1; cut <= 3; ++cut)
            neg_res = std::max(neg_res,
                               std::abs(measures::negativity_one_rest(k, cut)
                                        - measures::negativity_partial_transpose(k, cut)));
    }
    c.add("negativity_cross_check", neg_res, 1e-10);

    double amp_res = 0.0;
    for (int t = 0; t < 200; ++t) {
        const SymParams p = random_params(g);
        amp_res = std::max(amp_res,
                           std::abs(measures::tangle_amplitude(states::sym_state(p))
                                    - measures::tangle_param(p)));
    }
    c.add("tangle_amplitude_vs_param", amp_res, 1e-10);
}

void check_response(Ctx& c)
{
    auto g = c.rng(4);
    double ident = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const SymParams p = random_params(g);
        const auto e = response::r_matrix(p);
        const double neg = measures::negativity_one_rest(states::sym_state(p), 1);
        const double tau = std::abs(measures::tangle_param(p));
        ident = std::max(ident, std::abs(e.X + e.Y - 8.0 * neg * neg));
        ident = std::max(ident, std::abs(e.X * e.Y - std::norm(e.Z_plus) - 16.0 * tau * tau));
        ident = std::max(ident, std::abs(e.X * e.Y - std::norm(e.Z_minus) - 16.0 * tau * tau));
    }
    c.add("r_identities", ident, 1e-10);

    double omega_res = 0.0, lin_res = 0.0, moduli_res = 0.0;
    for (int t = 0; t < 50; ++t) {
        const SymParams p = random_params(g);
        double lin = 0.0;
        const CMatrix omega = response::omega_matrix(p, &lin);
        lin_res = std::max(lin_res, lin);
        const CMatrix r = response::r_assemble(response::r_matrix(p));
        omega_res = std::max(omega_res, max_abs(omega.conjugate() * omega - r));

        const auto mod = response::omega_moduli(p);
        Eigen::VectorXd tm = linalg::takagi(omega).omega.cwiseAbs();
        std::sort(tm.data(), tm.data() + 4, std::greater<double>());
        for (int i = 0; i < 4; ++i)
            moduli_res = std::max(moduli_res, std::abs(mod[i] - tm[i]));
    }
    c.add("omega_vs_r", omega_res, 1e-8);
    c.add("omega_linear_term", lin_res, 1e-10);
    c.add("omega_moduli_vs_takagi", moduli_res, 1e-8);

    double spect = 0.0;
    for (int t = 0; t < 500; ++t) {
        const SymParams p = random_params(g);
        const auto rep = response::lrt(p);
        double sum = 0.0;
        for (double w : rep.omega_moduli) sum += w;
        spect = std::max(spect, std::abs(rep.eta - 2.0 * rep.tau - sum / 4.0));
    }
    c.add("lrt_spectrum_identity", spect, 1e-10);

    double fp = std::abs(response::lrt({kPi / 2, kPi / 4, 0.0}).eta - 4.0);
    fp = std::max(fp, std::abs(response::lrt({0.0, 0.0, 0.0}).eta - 4.0 / 3.0));
    fp = std::max(fp, std::abs(response::lrt({kPi / 2, 0.0, 0.0}).eta));
    c.add("lrt_fixed_points", fp, 1e-10);

    double sd = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double alpha = kPi / 2 * i / 10.0;
        const auto rep = response::lrt({alpha, kPi / 2, 0.3});
        if (rep.tau < 1e-6 && rep.negativity > 0.1)
            sd = std::max(sd, std::abs(rep.eta - std::sqrt(2.0) * rep.negativity));
    }
    c.add("sudden_death_limit", sd, 1e-5);

    double env = 0.0;
    for (int t = 0; t < 2000; ++t) {
        const SymParams p = random_params(g);
        const auto rep = response::lrt(p);
        env = std::max(env, response::ghz_curve(std::min(1.0, rep.tau)) - rep.eta);
    }
    c.add("ghz_envelope", std::max(0.0, env), 1e-9);
}

void check_ensembles(Ctx& c)
{
    auto g = c.rng(5);
    double res2 = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double theta = g.uniform(0.05, kPi / 4);
        const double s = std::sin(2.0 * theta);
        const double q = g.uniform(0.0, 0.8 * s / (1.0 + s));
        const auto ens = response::optimal_ensemble_2q(theta, q);
        const auto target = states::mix(states::phi(theta), states::noise_op_2q(), q);
        res2 = std::max(res2, trace_norm(measures::ensemble_density(ens) - target.rho));
        res2 = std::max(res2,
                        std::abs(measures::ensemble_average(ens, measures::concurrence_pure)
                                 - response::exact_concurrence_curve(theta, q)));
    }
    c.add("ensemble_2q", res2, 1e-10);

    const auto tangle = [](const Ket& k) { return measures::tangle_pure(k); };
    double res3 = 0.0;
    const SymParams sets[3] = {{kPi / 3, kPi / 5, 0.3}, {kPi / 2, kPi / 4, 0.0}, {1.1, 0.7, -0.5}};
    for (const auto& p : sets) {
        const auto ens = response::optimal_ensemble_3q(p, 0.01);
        const auto target = states::mix(states::sym_state(p), states::noise_op_3q(0.5), 0.01);
        res3 = std::max(res3, trace_norm(measures::ensemble_density(ens) - target.rho));
    }
    c.add("ensemble_3q_reconstruction", res3, 1e-10);

    const SymParams p{kPi / 3, kPi / 5, 0.3};
    const double tau = std::abs(measures::tangle_param(p));
    const auto mod = response::omega_moduli(p);
    const double sum = mod[0] + mod[1] + mod[2] + mod[3];
    const auto excess = [&](double q) {
        const double avg =
            measures::ensemble_average(response::optimal_ensemble_3q(p, q), tangle);
        return std::abs(avg - ((1.0 - 2.0 * q) * tau - q * sum / 4.0));
    };
    const double ratio = excess(1e-2) / excess(1e-3);
    c.add("ensemble_3q_slope", std::abs(ratio - 100.0), 20.0);
}

void check_critical(Ctx& c)
{
    const std::pair<double, double> spots[4] = {{0.05, 0.3}, {0.2, 0.7}, {0.5, 0.5}, {0.8, 0.2}};
    double bg = 0.0, bj = 0.0;
    for (const auto& [qt, p] : spots) {
        bg = std::max(bg, std::abs(critical::tau_tilde_G(qt, p)
                                   - critical::characteristic_min(critical::Family::G, qt, p)));
        bj = std::max(bj, std::abs(critical::tau_tilde_J(qt, p)
                                   - critical::characteristic_min(critical::Family::J, qt, p)));
    }
    c.add("tau_tilde_G_brute", bg, 1e-8);
    c.add("tau_tilde_J_brute", bj, 1e-8);

    double recon = 0.0, member = 0.0;
    {
        const double qt = 0.1, p = 0.4;
        const auto target = [&](const Ket& base) {
            return ((1.0 - qt) * (base.amps * base.amps.adjoint()) + qt * states::noise_op_3q(p).rho)
                .eval();
        };
        const auto eg = critical::optimal_ensemble_Gtilde(qt, p);
        recon = std::max(recon, trace_norm(measures::ensemble_density(eg) - target(states::g_tilde())));
        for (const auto& [w, k] : eg.members)
            member = std::max(member, std::abs(measures::tangle_pure(k) - critical::tau_tilde_G(qt, p)));
        const auto ej = critical::optimal_ensemble_Jtilde(qt, p);
        recon = std::max(recon, trace_norm(measures::ensemble_density(ej) - target(states::j_tilde())));
        for (const auto& [w, k] : ej.members)
            member = std::max(member, std::abs(measures::tangle_pure(k) - critical::tau_tilde_J(qt, p)));
    }
    c.add("six_state_reconstruction", recon, 1e-10);
    c.add("six_state_member_tangle", member, 1e-8);

    double conv = 0.0;
    for (auto f : {critical::Family::G, critical::Family::J}) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i <= 40; ++i) {
            const double p = 0.01 + (0.99 - 0.01) * i / 40.0;
            const double qt = critical::critical_qtilde(f, p);
            pts.emplace_back(qt * p, qt * (1.0 - p));
        }
        conv = std::max(conv, -min_chord_excess(std::move(pts)));
    }
    c.add("critical_curve_convexity", std::max(0.0, conv), 1e-9);

    double prop = 0.0;
    const std::pair<double, double> gspots[3] = {{0.3, 0.2}, {0.6, -0.4}, {kPi / 4, 0.0}};
    for (const auto& [beta, gamma] : gspots) {
        const Ket psi = states::g_state(beta, gamma);
        const CVector v = states::local_A(states::x_G(beta, gamma)) * psi.amps;
        const CVector gt = states::g_tilde().amps;
        const complexd coeff = gt.dot(v);  // <g_tilde | v>
        prop = std::max(prop, (v - coeff * gt).cwiseAbs().maxCoeff());
        prop = std::max(prop,
                        std::abs(std::abs(coeff) - std::pow(measures::tangle_pure(psi), 0.25)));
    }
    for (double alpha : {0.3, 0.7, 1.2}) {
        const Ket psi = states::j_state(alpha);
        const CVector v = states::local_A(states::x_J(alpha)) * psi.amps;
        const double coeff = std::pow(measures::tangle_pure(psi), 0.25);
        prop = std::max(prop, (v - coeff * states::j_tilde().amps).cwiseAbs().maxCoeff());
    }
    c.add("rescale_proportionality", prop, 1e-10);

    const auto fixed = critical::critical_q_G(kPi / 4, 0.0);
    c.add("critical_q_identity_rescaling",
          std::abs(fixed.q_c - critical::critical_qtilde(critical::Family::G, 0.5)), 1e-9);

    const double eg = std::abs(critical::critical_q_G(kPi / 4, 0.0).avg_decay - 4.0) / 4.0;
    const double ej = std::abs(critical::critical_q_J(1e-5).avg_decay - 4.0 / 3.0) / (4.0 / 3.0);
    c.add("avg_decay_endpoints", std::max(eg, ej), 0.01);
}

void check_roof(Ctx& c)
{
    const auto rho2 = states::mix(states::phi(0.6), states::noise_op_2q(), 0.05);
    const double w = measures::concurrence_wootters(rho2);
    const double roof2 =
        measures::convex_roof(rho2, measures::concurrence_pure, 0, 8, 13).value;
    c.add("roof_matches_wootters_2q", std::abs(roof2 - w), 1e-4);

    const SymParams p{kPi / 2, kPi / 4, 0.0};
    const auto tangle = [](const Ket& k) { return measures::tangle_pure(k); };
    const double ansatz =
        measures::ensemble_average(response::optimal_ensemble_3q(p, 0.01), tangle);
    const auto rho3 = states::mix(states::sym_state(p), states::noise_op_3q(0.5), 0.01);
    const double roof3 = measures::convex_roof(rho3, tangle, 0, 8, 11).value;
    c.add("roof_below_ansatz_3q", std::max(0.0, roof3 - ansatz), 1e-4);
}

} // namespace

int Suite::failures() const
{
    int n = 0;
    for (const auto& ch : checks)
        if (!ch.pass) ++n;
    return n;
}

Suite run_suite(double tolerance_scale, std::uint64_t seed)
{
    Ctx c{tolerance_scale, seed, {}};
    check_linalg(c);
    check_states(c);
    check_measures(c);
    check_response(c);
    check_ensembles(c);
    check_critical(c);
    check_roof(c);
    return Suite{std::move(c.checks)};
}

} // namespace tangle::verify
