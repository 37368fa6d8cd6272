#pragma once

#include "core/linalg.hpp"

namespace tangle::states {

using linalg::CMatrix;
using linalg::CVector;
using linalg::complexd;

struct Ket {
    int n_qubits;
    CVector amps;  // dimension 2^n, unit norm
};

struct SymParams {
    double alpha;  // [0, pi/2]
    double beta;   // [0, pi/2]
    double gamma;  // [-pi/2, pi/2]
};

struct MixedState {
    int n_qubits;
    CMatrix rho;  // Hermitian, PSD, unit trace
};

// --- two-qubit family ---
Ket phi(double theta);               // cos(t)|00> + sin(t)|11>, t in [0, pi/4]
Ket phi_perp(int k, double theta);   // k=0: sin|00>-cos|11>, k=1: |01>, k=2: |10>
MixedState noise_op_2q();            // (|01><01| + |10><10|)/2

// --- three-qubit family ---
Ket w_state();                       // (|001>+|010>+|100>)/sqrt3
Ket w_bar();                         // (|110>+|101>+|011>)/sqrt3
Ket sym_state(const SymParams& p);
Ket noise_basis(int k);              // k = 1..4, zero-tangle frame orthogonal to sym_state
MixedState noise_op_3q(double p);    // [p(P1+P2) + (1-p)(P3+P4)]/2

MixedState mix(const Ket& pure, const MixedState& noise, double q);

// --- rescaling ---
CMatrix local_A(complexd x);         // diag(x,1/x)^{tensor 3}, det 1
MixedState rescale(const MixedState& rho, complexd x);

Ket g_state(double beta, double gamma);  // cos(b)|000> + sin(b)e^{ig}|111>
Ket j_state(double alpha);               // cos(a)|Wbar> + sin(a)|000>
Ket g_tilde();                           // (|000>+|111>)/sqrt2
Ket j_tilde();                           // (|000>+|110>+|101>+|011>)/2

complexd x_G(double beta, double gamma); // principal sixth root of tan(b)e^{ig}
double x_J(double alpha);                // (cot(a)/sqrt3)^{1/4}

Ket make_ket(int n_qubits, CVector amps);            // normalizes, validates dimension
MixedState make_mixed(int n_qubits, CMatrix rho);    // validates Hermiticity/trace/PSD

} // namespace tangle::states
