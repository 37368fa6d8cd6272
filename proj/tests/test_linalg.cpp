#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/linalg.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace tangle::linalg;

namespace {

CMatrix random_complex(SplitMix64& g, int rows, int cols)
{
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = g.next_complex_gaussian();
    return m;
}

double max_abs(const CMatrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("pauli accessors")
{
    CHECK(max_abs(sigma_x() * sigma_x() - identity2()) == doctest::Approx(0.0));
    CHECK(max_abs(sigma_y() * sigma_y() - identity2()) == doctest::Approx(0.0));
    CHECK(max_abs(sigma_z() * sigma_z() - identity2()) == doctest::Approx(0.0));
    // sigma0 squares to minus the identity
    CHECK(max_abs(sigma0() * sigma0() + identity2()) == doctest::Approx(0.0));
}

TEST_CASE("kron layout and composition")
{
    const CMatrix k = kron(sigma_x(), sigma_z());
    CHECK(k.rows() == 4);
    CHECK(k(0, 2) == complexd(1.0, 0.0));
    CHECK(k(1, 3) == complexd(-1.0, 0.0));
    CHECK(k(0, 0) == complexd(0.0, 0.0));

    const CMatrix a = kron3(sigma_x(), sigma_y(), sigma_z());
    const CMatrix b = kron(sigma_x(), kron(sigma_y(), sigma_z()));
    CHECK(max_abs(a - b) < 1e-15);
}

TEST_CASE("partial trace recovers tensor factors")
{
    SplitMix64 g(42);
    CMatrix a = random_complex(g, 2, 2);
    a = (a * a.adjoint()).eval();
    a /= a.trace().real();
    CMatrix b = random_complex(g, 4, 4);
    b = (b * b.adjoint()).eval();
    b /= b.trace().real();

    const CMatrix rho = kron(a, b);
    CHECK(max_abs(partial_trace(rho, 3, {2, 3}) - a) < 1e-12);
    CHECK(max_abs(partial_trace(rho, 3, {1}) - b) < 1e-12);
    CHECK(std::abs(partial_trace(rho, 3, {1, 2, 3})(0, 0).real() - 1.0) < 1e-12);
}

TEST_CASE("partial trace of a bell pair is maximally mixed")
{
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const CMatrix rho = bell * bell.adjoint();
    CHECK(max_abs(partial_trace(rho, 2, {2}) - 0.5 * identity2()) < 1e-15);
    CHECK(max_abs(partial_trace(rho, 2, {1}) - 0.5 * identity2()) < 1e-15);
}

TEST_CASE("partial trace rejects bad indices")
{
    const CMatrix rho = CMatrix::Identity(4, 4) / 4.0;
    CHECK_THROWS_AS(partial_trace(rho, 2, {3}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho, 3, {1}), std::invalid_argument);
}

TEST_CASE("herm_eig orders ascending and fixes phases")
{
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    d(2, 2) = 0.5;
    const auto e = herm_eig(d);
    CHECK(e.values(0) == doctest::Approx(-1.0));
    CHECK(e.values(1) == doctest::Approx(0.5));
    CHECK(e.values(2) == doctest::Approx(2.0));

    SplitMix64 g(7);
    for (int t = 0; t < 10; ++t) {
        CMatrix m = random_complex(g, 6, 6);
        const CMatrix h = ((m + m.adjoint()) / 2.0).eval();
        const auto r = herm_eig(h);
        for (int i = 1; i < 6; ++i) CHECK(r.values(i) >= r.values(i - 1));
        CHECK(max_abs(r.vectors.adjoint() * r.vectors - CMatrix::Identity(6, 6)) < 1e-12);
        const CMatrix recon =
            r.vectors * r.values.asDiagonal().toDenseMatrix().cast<complexd>() * r.vectors.adjoint();
        CHECK(max_abs(recon - h) < 1e-12);
        for (int c = 0; c < 6; ++c) {
            for (int i = 0; i < 6; ++i) {
                const complexd v = r.vectors(i, c);
                if (std::abs(v) > 1e-12) {
                    CHECK(v.real() > 0.0);
                    CHECK(std::abs(v.imag()) < 1e-12);
                    break;
                }
            }
        }
    }
    CHECK_THROWS_AS(herm_eig(random_complex(g, 4, 4)), std::invalid_argument);
}

TEST_CASE("sqrt_psd squares back and rejects indefinite input")
{
    SplitMix64 g(11);
    CMatrix m = random_complex(g, 5, 5);
    const CMatrix h = (m * m.adjoint() / 5.0).eval();
    const CMatrix e = sqrt_psd(h);
    CHECK(max_abs(e * e - h) < 1e-11);
    CHECK(max_abs(e - e.adjoint()) < 1e-11);

    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(sqrt_psd(neg), std::invalid_argument);
}

TEST_CASE("takagi factors random symmetric matrices")
{
    SplitMix64 g(3);
    for (int t = 0; t < 25; ++t) {
        CMatrix m = random_complex(g, 4, 4);
        const CMatrix s = ((m + m.transpose()) / 2.0).eval();
        const auto r = takagi(s);
        CHECK(max_abs(r.u.adjoint() * r.u - CMatrix::Identity(4, 4)) < 1e-10);
        CHECK(max_abs(r.u.transpose() * r.omega.asDiagonal() * r.u - s) < 1e-8);

        Eigen::JacobiSVD<CMatrix> svd(s);
        Eigen::VectorXd sv = svd.singularValues();
        Eigen::VectorXd om = r.omega.cwiseAbs();
        std::sort(sv.data(), sv.data() + 4);
        std::sort(om.data(), om.data() + 4);
        CHECK((sv - om).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("takagi handles degenerate singular values")
{
    // identity: all singular values equal
    const CMatrix id = CMatrix::Identity(4, 4);
    auto r = takagi(id);
    CHECK(max_abs(r.u.transpose() * r.omega.asDiagonal() * r.u - id) < 1e-10);

    // symmetric unitary with degenerate pair
    r = takagi(sigma_x());
    CHECK(max_abs(r.u.transpose() * r.omega.asDiagonal() * r.u - sigma_x()) < 1e-10);

    // real symmetric indefinite: phases land on +-1
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    d(2, 2) = 2.0;
    r = takagi(d);
    CHECK(max_abs(r.u.transpose() * r.omega.asDiagonal() * r.u - d) < 1e-10);

    CHECK_THROWS_AS(takagi(CMatrix::Zero(3, 2)), std::invalid_argument);
    SplitMix64 g(5);
    CHECK_THROWS_AS(takagi(random_complex(g, 3, 3)), std::invalid_argument);
}

TEST_CASE("haar_isometry gives deterministic orthonormal columns")
{
    const CMatrix v = haar_isometry(8, 4, 123);
    CHECK(max_abs(v.adjoint() * v - CMatrix::Identity(4, 4)) < 1e-12);
    CHECK(max_abs(v - haar_isometry(8, 4, 123)) == 0.0);
    CHECK(max_abs(v - haar_isometry(8, 4, 124)) > 1e-3);
    CHECK_THROWS_AS(haar_isometry(3, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(haar_isometry(3, 0, 1), std::invalid_argument);
}

TEST_CASE("rng streams are reproducible and decorrelated")
{
    auto a = SplitMix64::stream(9, 0);
    auto b = SplitMix64::stream(9, 0);
    auto c = SplitMix64::stream(9, 1);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());

    SplitMix64 g(17);
    double mean = 0.0, var = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = g.next_gaussian();
        mean += x;
        var += x * x;
    }
    mean /= n;
    var = var / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.05);
}
