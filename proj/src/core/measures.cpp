#include "core/measures.hpp"

#include "core/rng.hpp"

#include <Eigen/QR>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace tangle::measures {
namespace {

using linalg::kron;
using linalg::kron3;
using linalg::SplitMix64;

constexpr double kRankTol = 1e-12;
constexpr double kStepStart = 0.25;
constexpr double kStepStop = 1e-6;
constexpr int kFailLimit = 20;

CMatrix sigma_yy()
{
    return kron(linalg::sigma_y(), linalg::sigma_y());
}

// Thin Q factor; columns span the same space as the perturbed isometry.
CMatrix qr_orth(const CMatrix& a)
{
    Eigen::HouseholderQR<CMatrix> qr(a);
    return qr.householderQ() * CMatrix::Identity(a.rows(), a.cols());
}

CMatrix partial_transpose_one(const CMatrix& rho, int n_qubits, int cut)
{
    const int dim = 1 << n_qubits;
    const int shift = n_qubits - cut;  // qubit 1 is the most significant bit
    const int mask = 1 << shift;
    CMatrix out(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const int ip = (i & ~mask) | (j & mask);
            const int jp = (j & ~mask) | (i & mask);
            out(i, j) = rho(ip, jp);
        }
    }
    return out;
}

struct EnsembleEval {
    double average;
    Ensemble ensemble;
};

// Members |psi_j> prop. to sum_i V_ji sqrt(lambda_i)|e_i>; probabilities are the
// squared norms, so sum_j p_j |psi_j><psi_j| = rho for any isometry V.
EnsembleEval evaluate_isometry(const CMatrix& f, int n_qubits, const CMatrix& v,
                               const std::function<double(const Ket&)>& measure)
{
    EnsembleEval out;
    out.average = 0.0;
    const auto m = v.rows();
    for (Eigen::Index j = 0; j < m; ++j) {
        CVector u = f * v.row(j).transpose();
        const double p = u.squaredNorm();
        if (p < 1e-28) continue;
        Ket member{n_qubits, u / std::sqrt(p)};
        out.average += p * measure(member);
        out.ensemble.members.emplace_back(p, std::move(member));
    }
    return out;
}

} // namespace

double concurrence_pure(const Ket& k)
{
    if (k.n_qubits != 2) throw std::invalid_argument("concurrence_pure: two-qubit state required");
    const CVector& psi = k.amps;
    const complexd bil = psi.transpose() * sigma_yy() * psi;
    return std::abs(bil);
}

double concurrence_wootters(const MixedState& rho)
{
    if (rho.n_qubits != 2) throw std::invalid_argument("concurrence_wootters: two-qubit state required");
    // The lambda_i are the singular values of A = sqrt(rho) S conj(sqrt(rho))
    // with S = sigma_y x sigma_y, since A A^dag = sqrt(rho) rhot sqrt(rho).
    // Reading them from an SVD instead of square-rooting eigenvalues of the
    // product keeps the near-zero ones at machine precision.
    const CMatrix e = linalg::sqrt_psd(rho.rho);
    const CMatrix a = e * sigma_yy() * e.conjugate();
    Eigen::JacobiSVD<CMatrix> svd(a);
    const Eigen::VectorXd s = svd.singularValues();  // descending
    double sum = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) sum += s[i];
    return std::max(0.0, 2.0 * s[0] - sum);
}

double negativity_one_rest(const Ket& k, int cut)
{
    if (cut < 1 || cut > k.n_qubits) throw std::invalid_argument("negativity_one_rest: cut out of range");
    const CMatrix rho = k.amps * k.amps.adjoint();
    std::vector<int> traced;
    for (int q = 1; q <= k.n_qubits; ++q)
        if (q != cut) traced.push_back(q);
    const CMatrix r1 = linalg::partial_trace(rho, k.n_qubits, traced);
    const double det = std::real(r1(0, 0) * r1(1, 1) - r1(0, 1) * r1(1, 0));
    return std::sqrt(std::max(0.0, 4.0 * det));
}

double negativity_partial_transpose(const Ket& k, int cut)
{
    if (cut < 1 || cut > k.n_qubits) throw std::invalid_argument("negativity_partial_transpose: cut out of range");
    const CMatrix rho = k.amps * k.amps.adjoint();
    const CMatrix pt = partial_transpose_one(rho, k.n_qubits, cut);
    const auto eig = linalg::herm_eig(pt);
    double neg = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values[i] < 0.0) neg -= eig.values[i];
    return 2.0 * neg;
}

complexd tangle_amplitude_raw(const CVector& amps)
{
    if (amps.size() != 8) throw std::invalid_argument("tangle_amplitude: three-qubit state required");
    static const std::array<CMatrix, 3> forms = [] {
        const CMatrix sy = linalg::sigma_y();
        return std::array<CMatrix, 3>{
            kron3(linalg::sigma0(), sy, sy),
            kron3(linalg::sigma_x(), sy, sy),
            kron3(linalg::sigma_z(), sy, sy),
        };
    }();
    complexd amp = 0.0;
    for (const auto& m : forms) {
        const complexd bil = amps.transpose() * m * amps;
        amp += bil * bil;
    }
    return amp;
}

complexd tangle_amplitude(const Ket& k)
{
    if (k.n_qubits != 3) throw std::invalid_argument("tangle_amplitude: three-qubit state required");
    return tangle_amplitude_raw(k.amps);
}

complexd tangle_param(const SymParams& p)
{
    const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
    const double cb = std::cos(p.beta), sb = std::sin(p.beta);
    const complexd phase = std::exp(complexd(0.0, 2.0 * p.gamma));
    return (16.0 * std::sqrt(3.0) / 9.0) * ca * ca * ca * sa * cb
         + 4.0 * phase * sa * sa * sa * sa * cb * cb * sb * sb;
}

double tangle_pure(const Ket& k)
{
    return std::abs(tangle_amplitude(k));
}

CMatrix ensemble_density(const Ensemble& e)
{
    if (e.members.empty()) throw std::invalid_argument("ensemble_density: empty ensemble");
    const auto dim = e.members.front().second.amps.size();
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (const auto& [p, k] : e.members) rho += p * (k.amps * k.amps.adjoint());
    return rho;
}

double ensemble_average(const Ensemble& e, const std::function<double(const Ket&)>& measure)
{
    double avg = 0.0;
    for (const auto& [p, k] : e.members) avg += p * measure(k);
    return avg;
}

RoofResult convex_roof(const MixedState& rho, const std::function<double(const Ket&)>& measure,
                       int m, int restarts, std::uint64_t seed)
{
    if (restarts < 1) throw std::invalid_argument("convex_roof: restarts must be positive");
    const auto eig = linalg::herm_eig(rho.rho);
    const auto dim = rho.rho.rows();

    int rank = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values[i] > kRankTol) ++rank;
    if (rank == 0) throw std::invalid_argument("convex_roof: zero density matrix");

    // Columns sqrt(lambda_i) |e_i>, largest eigenvalue first.
    CMatrix f(dim, rank);
    for (int i = 0; i < rank; ++i) {
        const Eigen::Index src = eig.values.size() - 1 - i;
        f.col(i) = std::sqrt(eig.values[src]) * eig.vectors.col(src);
    }

    if (m <= 0) m = rank + 2;
    if (m < rank) throw std::invalid_argument("convex_roof: ensemble size below rank");

    RoofResult best;
    best.value = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < restarts; ++restart) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(restart));
        CMatrix v = linalg::haar_isometry(m, rank, rng.next_u64());
        EnsembleEval cur = evaluate_isometry(f, rho.n_qubits, v, measure);

        double step = kStepStart;
        int fails = 0;
        while (step >= kStepStop) {
            CMatrix g(m, rank);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < rank; ++j) g(i, j) = rng.next_complex_gaussian();
            CMatrix cand = qr_orth(v + step * g);
            EnsembleEval trial = evaluate_isometry(f, rho.n_qubits, cand, measure);
            if (trial.average < cur.average) {
                v = std::move(cand);
                cur = std::move(trial);
                fails = 0;
            } else if (++fails >= kFailLimit) {
                step *= 0.5;
                fails = 0;
            }
        }

        if (cur.average < best.value) {
            best.value = cur.average;
            best.best = std::move(cur.ensemble);
        }
    }

    best.value = std::max(0.0, best.value);
    return best;
}

} // namespace tangle::measures
