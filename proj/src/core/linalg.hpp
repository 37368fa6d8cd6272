#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace tangle::linalg {

using complexd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Pauli matrices; sigma0 is i times the identity so that the three-tangle
// quartic form uses the basis {sigma0, sigma_x, sigma_z}.
const CMatrix& identity2();
const CMatrix& sigma0();
const CMatrix& sigma_x();
const CMatrix& sigma_y();
const CMatrix& sigma_z();

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron3(const CMatrix& a, const CMatrix& b, const CMatrix& c);

// Qubit 1 is the leftmost tensor factor (most significant bit of the basis
// index). `traced` holds 1-based qubit indices to trace out.
CMatrix partial_trace(const CMatrix& rho, int n_qubits, const std::vector<int>& traced);

struct EigResult {
    Eigen::VectorXd values;  // ascending
    CMatrix vectors;         // columns, orthonormal, first nonzero entry real positive
};

EigResult herm_eig(const CMatrix& h);

CMatrix sqrt_psd(const CMatrix& h);

struct TakagiResult {
    CMatrix u;      // unitary, s = u^T * diag(omega) * u
    CVector omega;  // |omega_k| are the singular values of s
};

// Factorization of a complex symmetric matrix. Degenerate singular values are
// handled by jointly diagonalizing the real and imaginary parts of the
// symmetric unitary block they span.
TakagiResult takagi(const CMatrix& s);

// m x r with orthonormal columns, Haar-distributed, deterministic per seed.
CMatrix haar_isometry(int m, int r, std::uint64_t seed);

} // namespace tangle::linalg
