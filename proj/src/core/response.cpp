#include "core/response.hpp"

#include <Eigen/LU>

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tangle::response {
namespace {

using linalg::CVector;

constexpr double kPi = std::numbers::pi;
constexpr double kRangeSlack = 1e-12;
constexpr double kZeroTau = 1e-12;

void check_range(double v, double lo, double hi, const char* what)
{
    if (!(v >= lo - kRangeSlack && v <= hi + kRangeSlack))
        throw std::domain_error(std::string(what) + ": parameter out of range");
}

// Coefficients of the quartic s -> amplitude(psi0 + s * pert), lowest order
// first, from five sample points.
std::array<complexd, 5> quartic_coeffs(const CVector& psi0, const CVector& pert)
{
    static const double svals[5] = {-2.0, -1.0, 1.0, 2.0, 3.0};
    CMatrix vand(5, 5);
    CVector rhs(5);
    for (int i = 0; i < 5; ++i) {
        double pw = 1.0;
        for (int j = 0; j < 5; ++j) {
            vand(i, j) = pw;
            pw *= svals[i];
        }
        rhs(i) = measures::tangle_amplitude_raw(psi0 + svals[i] * pert);
    }
    const CVector sol = vand.partialPivLu().solve(rhs);
    return {sol(0), sol(1), sol(2), sol(3), sol(4)};
}

double eta_closed_form(double tau, double neg)
{
    const double n2 = neg * neg;
    const double rad = n2 * n2 - tau * tau;
    if (rad < -1e-12)
        throw std::domain_error("lrt: negativity^4 below tangle^2");
    const double inner = std::sqrt(std::max(0.0, rad));
    return 2.0 * tau + std::sqrt(std::max(0.0, n2 - inner)) + std::sqrt(n2 + inner);
}

Ensemble build_ensemble_3q(const CVector& psi, const std::array<CVector, 4>& tb, double q,
                           double xi, const std::array<double, 4>& zeta)
{
    Ensemble e;
    const double sp = std::sqrt(1.0 - q);
    const double sq = std::sqrt(q);
    for (int j = 0; j < 16; ++j) {
        CVector v = sp * psi;
        for (int k = 0; k < 4; ++k) {
            const double delta = ((j >> k) & 1) ? kPi : 0.0;
            const complexd c = 0.5 * std::polar(1.0, xi + zeta[k] + delta);
            v += sq * c * tb[k];
        }
        e.members.emplace_back(1.0 / 16.0, states::Ket{3, v / v.norm()});
    }
    return e;
}

} // namespace

double lrc(double theta)
{
    check_range(theta, 0.0, kPi / 4, "lrc");
    return std::sin(2.0 * theta) + 1.0;
}

double exact_concurrence_curve(double theta, double q)
{
    check_range(theta, 0.0, kPi / 4, "exact_concurrence_curve");
    check_range(q, 0.0, 1.0, "exact_concurrence_curve");
    const double s = std::sin(2.0 * theta);
    return std::max(0.0, s - q * (1.0 + s));
}

Ensemble optimal_ensemble_2q(double theta, double q)
{
    check_range(theta, 0.0, kPi / 4, "optimal_ensemble_2q");
    check_range(q, 0.0, 1.0, "optimal_ensemble_2q");
    const double s = std::sin(2.0 * theta);
    if (s - q * (1.0 + s) < 0.0)
        throw std::domain_error("optimal_ensemble_2q: q beyond the sudden-death threshold");

    const CVector base = states::phi(theta).amps;
    const CVector n1 = states::phi_perp(1, theta).amps;
    const CVector n2 = states::phi_perp(2, theta).amps;
    const double sp = std::sqrt(1.0 - q);
    const double sq = std::sqrt(q);

    Ensemble e;
    for (int j = 0; j < 4; ++j) {
        const double phase = j * kPi / 2.0;
        const complexd a = std::polar(1.0 / std::sqrt(2.0), phase);
        const complexd b = std::polar(1.0 / std::sqrt(2.0), -phase);
        CVector v = sp * base + sq * (a * n1 + b * n2);
        e.members.emplace_back(0.25, states::Ket{2, v / v.norm()});
    }
    return e;
}

CMatrix omega_matrix(const SymParams& p, double* linear_residual)
{
    const CVector psi = states::sym_state(p).amps;
    std::array<CVector, 4> basis;
    for (int k = 0; k < 4; ++k) basis[k] = states::noise_basis(k + 1).amps;

    CMatrix omega = CMatrix::Zero(4, 4);
    double lin = 0.0;
    for (int k = 0; k < 4; ++k) {
        const auto c = quartic_coeffs(psi, basis[k]);
        omega(k, k) = -c[2];
        lin = std::max(lin, std::abs(c[1]));
    }
    for (int k = 0; k < 4; ++k) {
        for (int l = k + 1; l < 4; ++l) {
            const auto c = quartic_coeffs(psi, basis[k] + basis[l]);
            omega(k, l) = omega(l, k) = (-c[2] - omega(k, k) - omega(l, l)) / 2.0;
            lin = std::max(lin, std::abs(c[1]));
        }
    }
    if (linear_residual) *linear_residual = lin;
    return omega;
}

RMatrixElements r_matrix(const SymParams& p)
{
    const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
    const double cb = std::cos(p.beta), sb = std::sin(p.beta);
    const double s2b = std::sin(2.0 * p.beta);

    RMatrixElements e;
    e.X = (64.0 / 9.0) * std::pow(ca, 4) + 4.0 * std::pow(sa, 4) * s2b * s2b;
    e.Y = (64.0 / 3.0) * ca * ca * sa * sa * cb * cb + 16.0 * std::pow(sa, 4) * cb * cb * sb * sb;
    const auto z = [&](double sgn) {
        return (32.0 / 3.0) * std::polar(1.0, p.gamma + sgn * kPi / 3.0) * ca * ca * sa * sa * cb * sb
             - (32.0 / std::sqrt(3.0)) * std::polar(1.0, -p.gamma + sgn * kPi / 3.0) * ca * sa * sa * sa * cb * cb * sb;
    };
    e.Z_plus = z(1.0);
    e.Z_minus = z(-1.0);
    return e;
}

CMatrix r_assemble(const RMatrixElements& e)
{
    CMatrix r = CMatrix::Zero(4, 4);
    r(0, 0) = r(1, 1) = e.X;
    r(2, 2) = r(3, 3) = e.Y;
    r(0, 3) = e.Z_plus;
    r(3, 0) = std::conj(e.Z_plus);
    r(1, 2) = e.Z_minus;
    r(2, 1) = std::conj(e.Z_minus);
    return r;
}

std::array<double, 4> omega_moduli(const SymParams& p)
{
    const auto eig = linalg::herm_eig(r_assemble(r_matrix(p)));
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i)
        out[i] = std::sqrt(std::max(0.0, eig.values[3 - i]));
    return out;
}

ResponseReport lrt(const SymParams& p)
{
    ResponseReport rep;
    rep.tau = std::abs(measures::tangle_param(p));
    rep.negativity = measures::negativity_one_rest(states::sym_state(p), 1);
    rep.omega_moduli = omega_moduli(p);
    rep.eta = eta_closed_form(rep.tau, rep.negativity);
    return rep;
}

Ensemble optimal_ensemble_3q(const SymParams& p, double q)
{
    check_range(q, 0.0, 0.05, "optimal_ensemble_3q q");
    const states::Ket psi = states::sym_state(p);
    const complexd amp = measures::tangle_amplitude(psi);
    if (std::abs(amp) < kZeroTau)
        throw std::domain_error("optimal_ensemble_3q: vanishing tangle leaves the phase frame undefined");

    const CMatrix omega = omega_matrix(p);
    const auto tak = linalg::takagi(omega);

    std::array<CVector, 4> tb;
    for (int l = 0; l < 4; ++l) {
        tb[l] = CVector::Zero(8);
        for (int k = 0; k < 4; ++k)
            tb[l] += std::conj(tak.u(l, k)) * states::noise_basis(k + 1).amps;
    }

    const double xi = 0.5 * std::arg(amp);
    std::array<double, 4> zeta_minus{}, zeta_plus{};
    for (int k = 0; k < 4; ++k) {
        const double half = 0.5 * std::arg(tak.omega(k));
        zeta_minus[k] = -half;
        zeta_plus[k] = half;
    }

    Ensemble chosen = build_ensemble_3q(psi.amps, tb, q, xi, zeta_minus);
    Ensemble alt = build_ensemble_3q(psi.amps, tb, q, xi, zeta_plus);
    const auto tangle = [](const Ket& k) { return measures::tangle_pure(k); };
    const double avg_chosen = measures::ensemble_average(chosen, tangle);
    const double avg_alt = measures::ensemble_average(alt, tangle);
    if (avg_alt < avg_chosen - 1e-12) {
        std::cerr << "optimal_ensemble_3q: opposite phase convention gave the lower average ("
                  << avg_alt << " < " << avg_chosen << ")\n";
        return alt;
    }
    return chosen;
}

double ghz_curve(double tau)
{
    check_range(tau, 0.0, 1.0, "ghz_curve");
    tau = std::max(0.0, tau);
    return 2.0 * tau + 2.0 * std::sqrt(tau);
}

std::pair<double, double> jcurve_point(double alpha)
{
    check_range(alpha, 0.0, kPi / 2, "jcurve_point");
    const states::Ket k = states::j_state(alpha);
    const double tau = measures::tangle_pure(k);
    const double neg = measures::negativity_one_rest(k, 1);
    return {tau, eta_closed_form(tau, neg)};
}

} // namespace tangle::response
