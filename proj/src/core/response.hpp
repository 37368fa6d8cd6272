#pragma once

#include "core/measures.hpp"

#include <array>
#include <utility>

namespace tangle::response {

using linalg::CMatrix;
using linalg::complexd;
using measures::Ensemble;
using states::Ket;
using states::SymParams;

// --- two-qubit linear response ---
double lrc(double theta);                               // sin(2t) + 1
double exact_concurrence_curve(double theta, double q); // max(0, sin2t - q(1+sin2t))
Ensemble optimal_ensemble_2q(double theta, double q);   // 4 members, p = 1/4 each

// --- three-qubit coupling matrix ---

// Quartic coefficient extraction: the s^2 term of the amplitude expansion of
// sym_state + s * perturbation gives -Omega entries; the s^1 term vanishes.
// linear_residual, if given, receives the largest |s^1 coefficient| seen.
CMatrix omega_matrix(const SymParams& p, double* linear_residual = nullptr);

struct RMatrixElements {
    double X;
    double Y;
    complexd Z_plus;
    complexd Z_minus;
};

RMatrixElements r_matrix(const SymParams& p);
CMatrix r_assemble(const RMatrixElements& e);             // 4x4 Hermitian block form
std::array<double, 4> omega_moduli(const SymParams& p);   // descending sqrt eigenvalues of R

// --- three-qubit linear response ---

struct ResponseReport {
    double tau;
    double negativity;
    std::array<double, 4> omega_moduli;  // descending
    double eta;                          // 2 tau + sum|omega|/4
};

ResponseReport lrt(const SymParams& p);

Ensemble optimal_ensemble_3q(const SymParams& p, double q);  // 16 members, p = 1/16 each

// --- boundary curves ---
double ghz_curve(double tau);                        // 2 tau + 2 sqrt(tau)
std::pair<double, double> jcurve_point(double alpha);  // (tau, eta) along cos(a)|Wbar>+sin(a)|000>

} // namespace tangle::response
