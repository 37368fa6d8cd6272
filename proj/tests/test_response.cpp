#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/response.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <numbers>

using namespace tangle;
using states::Ket;
using states::SymParams;

namespace {

constexpr double kPi = std::numbers::pi;

SymParams random_params(linalg::SplitMix64& g)
{
    return {g.uniform(0, kPi / 2), g.uniform(0, kPi / 2), g.uniform(-kPi / 2, kPi / 2)};
}

double max_abs(const linalg::CMatrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("two qubit response coefficient")
{
    CHECK(response::lrc(kPi / 4) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(response::lrc(kPi / 12) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(response::lrc(0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(response::lrc(kPi / 3), std::domain_error);
    CHECK_THROWS_AS(response::lrc(-0.2), std::domain_error);
}

TEST_CASE("exact two qubit concurrence curve")
{
    CHECK(response::exact_concurrence_curve(kPi / 4, 0.1) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(response::exact_concurrence_curve(kPi / 4, 0.5) == doctest::Approx(0.0));
    CHECK(response::exact_concurrence_curve(0.3, 0.0) ==
          doctest::Approx(std::sin(0.6)).epsilon(1e-14));
    // slope at q=0 is -(1 + sin 2t)
    const double theta = 0.4, h = 1e-7;
    const double slope = (response::exact_concurrence_curve(theta, h) -
                          response::exact_concurrence_curve(theta, 0.0)) / h;
    CHECK(slope == doctest::Approx(-response::lrc(theta)).epsilon(1e-6));
}

TEST_CASE("two qubit optimal ensemble reconstructs and attains the curve")
{
    linalg::SplitMix64 g(31);
    for (int t = 0; t < 10; ++t) {
        const double theta = g.uniform(0.1, kPi / 4);
        const double s = std::sin(2.0 * theta);
        const double q = g.uniform(0.0, s / (1.0 + s));
        const auto e = response::optimal_ensemble_2q(theta, q);
        REQUIRE(e.members.size() == 4);
        for (const auto& [p, k] : e.members) {
            CHECK(p == doctest::Approx(0.25));
            CHECK(std::abs(k.amps.norm() - 1.0) < 1e-14);
        }
        const auto rho = states::mix(states::phi(theta), states::noise_op_2q(), q);
        CHECK(max_abs(measures::ensemble_density(e) - rho.rho) < 1e-12);
        const double avg = measures::ensemble_average(e, measures::concurrence_pure);
        CHECK(std::abs(avg - response::exact_concurrence_curve(theta, q)) < 1e-10);
    }
    // beyond sudden death no flat ensemble exists
    CHECK_THROWS_AS(response::optimal_ensemble_2q(0.1, 0.9), std::domain_error);
}

TEST_CASE("polarization extraction matches the analytic coupling matrix")
{
    linalg::SplitMix64 g(32);
    for (int t = 0; t < 10; ++t) {
        const SymParams p = random_params(g);
        double lin = 0.0;
        const linalg::CMatrix omega = response::omega_matrix(p, &lin);
        CHECK(lin < 1e-10);
        CHECK(max_abs(omega - omega.transpose()) < 1e-12);
        const linalg::CMatrix r = response::r_assemble(response::r_matrix(p));
        CHECK(max_abs(omega.conjugate() * omega - r) < 1e-8);
    }
}

TEST_CASE("analytic R elements at the corner states")
{
    const auto ghz = response::r_matrix({kPi / 2, kPi / 4, 0.0});
    CHECK(ghz.X == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(ghz.Y == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(std::abs(ghz.Z_plus) < 1e-13);
    CHECK(std::abs(ghz.Z_minus) < 1e-13);

    const auto wb = response::r_matrix({0.0, 0.3, -0.4});
    CHECK(wb.X == doctest::Approx(64.0 / 9.0).epsilon(1e-13));
    CHECK(wb.Y == doctest::Approx(0.0));
    CHECK(std::abs(wb.Z_plus) < 1e-13);
}

TEST_CASE("R identities tie the elements to tangle and negativity")
{
    linalg::SplitMix64 g(33);
    for (int t = 0; t < 200; ++t) {
        const SymParams p = random_params(g);
        const auto e = response::r_matrix(p);
        const Ket psi = states::sym_state(p);
        const double tau = measures::tangle_pure(psi);
        const double neg = measures::negativity_one_rest(psi, 1);
        CHECK(std::abs(e.X + e.Y - 8.0 * neg * neg) < 1e-10);
        CHECK(std::abs(e.X * e.Y - std::norm(e.Z_plus) - 16.0 * tau * tau) < 1e-10);
        CHECK(std::abs(e.X * e.Y - std::norm(e.Z_minus) - 16.0 * tau * tau) < 1e-10);
    }
}

TEST_CASE("coupling moduli at the corner states")
{
    const auto ghz = response::omega_moduli({kPi / 2, kPi / 4, 0.0});
    for (double m : ghz) CHECK(m == doctest::Approx(2.0).epsilon(1e-12));

    const auto wb = response::omega_moduli({0.0, 0.0, 0.0});
    CHECK(wb[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(wb[1] == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(wb[2] == doctest::Approx(0.0));
    CHECK(wb[3] == doctest::Approx(0.0));

    linalg::SplitMix64 g(34);
    for (int t = 0; t < 20; ++t) {
        const auto m = response::omega_moduli(random_params(g));
        CHECK(m[0] >= m[1]);
        CHECK(m[1] >= m[2]);
        CHECK(m[2] >= m[3]);
        CHECK(m[3] >= 0.0);
    }
}

TEST_CASE("three qubit response coefficient")
{
    CHECK(response::lrt({kPi / 2, kPi / 4, 0.0}).eta == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(response::lrt({0.0, 0.2, 0.1}).eta == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(response::lrt({kPi / 2, 0.0, 0.0}).eta == doctest::Approx(0.0));

    linalg::SplitMix64 g(35);
    for (int t = 0; t < 50; ++t) {
        const auto rep = response::lrt(random_params(g));
        double sum = 0.0;
        for (double m : rep.omega_moduli) sum += m;
        CHECK(std::abs(rep.eta - (2.0 * rep.tau + sum / 4.0)) < 1e-10);
        CHECK(rep.eta >= 0.0);
        CHECK(rep.eta >= response::ghz_curve(std::min(1.0, rep.tau)) - 1e-9);
    }
}

TEST_CASE("sudden death plateau of the zero tangle family")
{
    // beta = pi/2 keeps tau at zero; eta collapses to sqrt(2) negativity
    linalg::SplitMix64 g(36);
    for (int t = 0; t < 10; ++t) {
        const SymParams p{g.uniform(0.1, kPi / 2 - 0.1), kPi / 2, 0.0};
        const auto rep = response::lrt(p);
        CHECK(rep.tau < 1e-12);
        CHECK(std::abs(rep.eta - std::sqrt(2.0) * rep.negativity) < 1e-5);
    }
}

TEST_CASE("sixteen member ensemble reconstructs the noisy state")
{
    const SymParams p{kPi / 3, kPi / 5, 0.3};
    const double q = 0.01;
    const auto e = response::optimal_ensemble_3q(p, q);
    REQUIRE(e.members.size() == 16);
    for (const auto& [w, k] : e.members) {
        CHECK(w == doctest::Approx(1.0 / 16.0));
        CHECK(std::abs(k.amps.norm() - 1.0) < 1e-14);
    }
    const auto rho = states::mix(states::sym_state(p), states::noise_op_3q(0.5), q);
    CHECK(max_abs(measures::ensemble_density(e) - rho.rho) < 1e-10);
}

TEST_CASE("ensemble average decays at the response rate")
{
    const SymParams p{kPi / 3, kPi / 5, 0.3};
    const auto rep = response::lrt(p);
    const auto tangle = [](const Ket& k) { return measures::tangle_pure(k); };
    const auto drop = [&](double q) {
        const auto e = response::optimal_ensemble_3q(p, q);
        return (rep.tau - measures::ensemble_average(e, tangle)) / q;
    };
    // Richardson extrapolation in q removes the O(q^2) bias
    const double extrap = (10.0 * drop(1e-4) - drop(1e-3)) / 9.0;
    CHECK(std::abs(extrap - rep.eta) / rep.eta < 1e-2);
}

TEST_CASE("ensemble construction rejects undefined inputs")
{
    CHECK_THROWS_AS(response::optimal_ensemble_3q({kPi / 2, 0.0, 0.0}, 0.01), std::domain_error);
    CHECK_THROWS_AS(response::optimal_ensemble_3q({kPi / 3, kPi / 5, 0.3}, 0.2), std::domain_error);
}

TEST_CASE("boundary curves")
{
    CHECK(response::ghz_curve(0.0) == doctest::Approx(0.0));
    CHECK(response::ghz_curve(1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(response::ghz_curve(0.25) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS(response::ghz_curve(1.5), std::domain_error);

    const auto [tau0, eta0] = response::jcurve_point(0.0);
    CHECK(tau0 == doctest::Approx(0.0));
    CHECK(eta0 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    const auto [tau1, eta1] = response::jcurve_point(kPi / 6);
    CHECK(tau1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eta1 >= response::ghz_curve(1.0) - 1e-9);
}
