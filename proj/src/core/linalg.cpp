#include "core/linalg.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace tangle::linalg {

namespace {

CMatrix make2(complexd a, complexd b, complexd c, complexd d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

constexpr double kStructTol = 1e-10;
constexpr double kClipTol = 1e-12;

} // namespace

const CMatrix& identity2() {
    static const CMatrix m = make2(1, 0, 0, 1);
    return m;
}

const CMatrix& sigma0() {
    static const CMatrix m = make2(complexd(0, 1), 0, 0, complexd(0, 1));
    return m;
}

const CMatrix& sigma_x() {
    static const CMatrix m = make2(0, 1, 1, 0);
    return m;
}

const CMatrix& sigma_y() {
    static const CMatrix m = make2(0, complexd(0, -1), complexd(0, 1), 0);
    return m;
}

const CMatrix& sigma_z() {
    static const CMatrix m = make2(1, 0, 0, -1);
    return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix kron3(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
    return kron(kron(a, b), c);
}

CMatrix partial_trace(const CMatrix& rho, int n_qubits, const std::vector<int>& traced) {
    const int dim = 1 << n_qubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("partial_trace: dimension does not match qubit count");
    std::vector<bool> keep(n_qubits, true);
    for (int q : traced) {
        if (q < 1 || q > n_qubits)
            throw std::invalid_argument("partial_trace: qubit index out of range");
        keep[q - 1] = false;
    }
    std::vector<int> kept_bits;  // bit position of each kept qubit, MSB first
    std::vector<int> traced_bits;
    for (int q = 0; q < n_qubits; ++q) {
        int bit = n_qubits - 1 - q;  // qubit 1 is the most significant bit
        (keep[q] ? kept_bits : traced_bits).push_back(bit);
    }
    const int dk = 1 << kept_bits.size();
    const int dt = 1 << traced_bits.size();
    auto assemble = [&](int kept_idx, int traced_idx) {
        int full = 0;
        for (size_t b = 0; b < kept_bits.size(); ++b)
            if (kept_idx & (1 << (kept_bits.size() - 1 - b))) full |= 1 << kept_bits[b];
        for (size_t b = 0; b < traced_bits.size(); ++b)
            if (traced_idx & (1 << (traced_bits.size() - 1 - b))) full |= 1 << traced_bits[b];
        return full;
    };
    CMatrix out = CMatrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j)
            for (int t = 0; t < dt; ++t)
                out(i, j) += rho(assemble(i, t), assemble(j, t));
    return out;
}

EigResult herm_eig(const CMatrix& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("herm_eig: matrix not square");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kStructTol)
        throw std::invalid_argument("herm_eig: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("herm_eig: eigensolver failed");
    EigResult r{es.eigenvalues(), es.eigenvectors()};
    // fix each eigenvector's phase: first nonzero component real positive
    for (Eigen::Index c = 0; c < r.vectors.cols(); ++c) {
        for (Eigen::Index i = 0; i < r.vectors.rows(); ++i) {
            complexd v = r.vectors(i, c);
            if (std::abs(v) > kClipTol) {
                r.vectors.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return r;
}

CMatrix sqrt_psd(const CMatrix& h) {
    EigResult e = herm_eig(h);
    Eigen::VectorXd vals = e.values;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < -kClipTol)
            throw std::invalid_argument("sqrt_psd: matrix has a negative eigenvalue");
        vals(i) = std::sqrt(std::max(0.0, vals(i)));
    }
    return e.vectors * vals.asDiagonal() * e.vectors.adjoint();
}

TakagiResult takagi(const CMatrix& s) {
    const Eigen::Index n = s.rows();
    if (s.cols() != n)
        throw std::invalid_argument("takagi: matrix not square");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > kStructTol)
        throw std::invalid_argument("takagi: matrix not symmetric");

    Eigen::JacobiSVD<CMatrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sig = svd.singularValues();  // descending
    CMatrix p = svd.matrixU();
    // For symmetric s, t = p^dagger * s * conj(p) is block diagonal over groups
    // of equal singular values, and each block is sigma times a symmetric unitary.
    CMatrix t = p.adjoint() * s * p.conjugate();

    CMatrix v = p;
    CVector omega = CVector::Zero(n);
    const double scale = std::max(1.0, sig.size() ? sig(0) : 0.0);

    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && std::abs(sig(j + 1) - sig(i)) <= 1e-8 * scale) ++j;
        const Eigen::Index len = j + 1 - i;
        if (sig(i) > kStructTol) {
            double mean = sig.segment(i, len).mean();
            CMatrix blk = t.block(i, i, len, len);
            blk = 0.5 * (blk + blk.transpose()).eval();
            CMatrix b = blk / mean;  // symmetric unitary; Re(b), Im(b) commute
            Eigen::MatrixXd br = b.real(), bi = b.imag();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esr(br);
            Eigen::VectorXd w = esr.eigenvalues();
            Eigen::MatrixXd o = esr.eigenvectors();
            Eigen::Index k = 0;
            while (k < len) {
                Eigen::Index m = k;
                while (m + 1 < len && std::abs(w(m + 1) - w(k)) < 1e-7) ++m;
                if (m > k) {
                    Eigen::MatrixXd sub = o.middleCols(k, m - k + 1);
                    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esy(
                        (sub.transpose() * bi * sub).eval());
                    o.middleCols(k, m - k + 1) = sub * esy.eigenvectors();
                }
                k = m + 1;
            }
            CMatrix oc = o.cast<complexd>();
            CVector phases = (oc.transpose() * b * oc).diagonal();
            for (Eigen::Index d = 0; d < len; ++d) omega(i + d) = mean * phases(d);
            v.middleCols(i, len) = v.middleCols(i, len) * oc;
        }
        i = j + 1;
    }
    return {v.transpose(), omega};
}

CMatrix haar_isometry(int m, int r, std::uint64_t seed) {
    if (m < r || r < 1)
        throw std::invalid_argument("haar_isometry: need m >= r >= 1");
    SplitMix64 gen(seed);
    CMatrix g(m, r);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j)
            g(i, j) = gen.next_complex_gaussian();
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(m, r);
    // fix column phases so the distribution is Haar and the result deterministic
    CMatrix rmat = q.adjoint() * g;
    for (int j = 0; j < r; ++j) {
        complexd d = rmat(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

} // namespace tangle::linalg
