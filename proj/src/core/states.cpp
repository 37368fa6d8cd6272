#include "core/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tangle::states {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRangeSlack = 1e-12;

CVector basis8(int idx) {
    CVector v = CVector::Zero(8);
    v(idx) = 1.0;
    return v;
}

CMatrix rz(double phi) {
    CMatrix m(2, 2);
    m << std::polar(1.0, phi), 0.0, 0.0, std::polar(1.0, -phi);
    return m;
}

void check_range(double v, double lo, double hi, const char* what) {
    if (!(v >= lo - kRangeSlack && v <= hi + kRangeSlack))
        throw std::domain_error(std::string(what) + ": parameter out of range");
}

} // namespace

Ket make_ket(int n_qubits, CVector amps) {
    if (amps.size() != (1 << n_qubits))
        throw std::invalid_argument("make_ket: dimension mismatch");
    double n = amps.norm();
    if (n <= 0.0)
        throw std::invalid_argument("make_ket: zero vector");
    return {n_qubits, amps / n};
}

MixedState make_mixed(int n_qubits, CMatrix rho) {
    if (rho.rows() != (1 << n_qubits) || rho.cols() != rho.rows())
        throw std::invalid_argument("make_mixed: dimension mismatch");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("make_mixed: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10)
        throw std::invalid_argument("make_mixed: trace not 1");
    if (linalg::herm_eig(rho).values.minCoeff() < -1e-10)
        throw std::invalid_argument("make_mixed: not positive semidefinite");
    return {n_qubits, std::move(rho)};
}

Ket phi(double theta) {
    check_range(theta, 0.0, kPi / 4, "phi");
    CVector v = CVector::Zero(4);
    v(0) = std::cos(theta);
    v(3) = std::sin(theta);
    return {2, v};
}

Ket phi_perp(int k, double theta) {
    check_range(theta, 0.0, kPi / 4, "phi_perp");
    CVector v = CVector::Zero(4);
    switch (k) {
        case 0:
            v(0) = std::sin(theta);
            v(3) = -std::cos(theta);
            break;
        case 1:
            v(1) = 1.0;
            break;
        case 2:
            v(2) = 1.0;
            break;
        default:
            throw std::invalid_argument("phi_perp: k must be 0, 1 or 2");
    }
    return {2, v};
}

MixedState noise_op_2q() {
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    return {2, rho};
}

Ket w_state() {
    CVector v = (basis8(0b001) + basis8(0b010) + basis8(0b100)) / std::sqrt(3.0);
    return {3, v};
}

Ket w_bar() {
    CVector v = (basis8(0b110) + basis8(0b101) + basis8(0b011)) / std::sqrt(3.0);
    return {3, v};
}

Ket sym_state(const SymParams& p) {
    check_range(p.alpha, 0.0, kPi / 2, "sym_state alpha");
    check_range(p.beta, 0.0, kPi / 2, "sym_state beta");
    check_range(p.gamma, -kPi / 2, kPi / 2, "sym_state gamma");
    CVector v = std::cos(p.alpha) * w_bar().amps;
    v += std::sin(p.alpha) *
         (std::cos(p.beta) * basis8(0b000) +
          std::sin(p.beta) * std::polar(1.0, p.gamma) * basis8(0b111));
    return {3, v};
}

Ket noise_basis(int k) {
    const double r = 2.0 * kPi / 3.0;
    const CMatrix& id = linalg::identity2();
    CMatrix op;
    CVector base;
    switch (k) {
        case 1: op = linalg::kron3(rz(r), rz(-r), id); base = w_state().amps; break;
        case 2: op = linalg::kron3(rz(-r), rz(r), id); base = w_state().amps; break;
        case 3: op = linalg::kron3(id, rz(r), rz(-r)); base = w_bar().amps; break;
        case 4: op = linalg::kron3(id, rz(-r), rz(r)); base = w_bar().amps; break;
        default: throw std::invalid_argument("noise_basis: k must be 1..4");
    }
    return {3, op * base};
}

MixedState noise_op_3q(double p) {
    check_range(p, 0.0, 1.0, "noise_op_3q");
    CMatrix rho = CMatrix::Zero(8, 8);
    for (int k = 1; k <= 4; ++k) {
        const CVector v = noise_basis(k).amps;
        const double w = (k <= 2 ? p : 1.0 - p) / 2.0;
        rho += w * (v * v.adjoint());
    }
    return {3, rho};
}

MixedState mix(const Ket& pure, const MixedState& noise, double q) {
    check_range(q, 0.0, 1.0, "mix");
    if (pure.n_qubits != noise.n_qubits)
        throw std::invalid_argument("mix: qubit count mismatch");
    CMatrix rho = (1.0 - q) * (pure.amps * pure.amps.adjoint()) + q * noise.rho;
    return {pure.n_qubits, std::move(rho)};
}

CMatrix local_A(complexd x) {
    if (std::abs(x) == 0.0)
        throw std::invalid_argument("local_A: x must be nonzero");
    CMatrix a1(2, 2);
    a1 << x, 0.0, 0.0, 1.0 / x;
    return linalg::kron3(a1, a1, a1);
}

MixedState rescale(const MixedState& rho, complexd x) {
    CMatrix a = local_A(x);
    CMatrix out = a * rho.rho * a.adjoint();
    double tr = out.trace().real();
    if (!(tr > 0.0) || !std::isfinite(tr))
        throw std::domain_error("rescale: degenerate rescaling");
    return {rho.n_qubits, out / tr};
}

Ket g_state(double beta, double gamma) {
    check_range(beta, 0.0, kPi / 2, "g_state beta");
    check_range(gamma, -kPi / 2, kPi / 2, "g_state gamma");
    CVector v = std::cos(beta) * basis8(0b000) +
                std::sin(beta) * std::polar(1.0, gamma) * basis8(0b111);
    return {3, v};
}

Ket j_state(double alpha) {
    check_range(alpha, 0.0, kPi / 2, "j_state alpha");
    CVector v = std::cos(alpha) * w_bar().amps + std::sin(alpha) * basis8(0b000);
    return {3, v};
}

Ket g_tilde() {
    CVector v = (basis8(0b000) + basis8(0b111)) / std::sqrt(2.0);
    return {3, v};
}

Ket j_tilde() {
    CVector v = (basis8(0b000) + basis8(0b110) + basis8(0b101) + basis8(0b011)) / 2.0;
    return {3, v};
}

complexd x_G(double beta, double gamma) {
    if (!(beta > 0.0 && beta < kPi / 2))
        throw std::domain_error("x_G: beta must be interior to (0, pi/2)");
    check_range(gamma, -kPi / 2, kPi / 2, "x_G gamma");
    complexd z = std::tan(beta) * std::polar(1.0, gamma);
    return std::pow(z, 1.0 / 6.0);  // principal branch
}

double x_J(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi / 2))
        throw std::domain_error("x_J: alpha must be interior to (0, pi/2)");
    return std::pow(1.0 / (std::tan(alpha) * std::sqrt(3.0)), 0.25);
}

} // namespace tangle::states
