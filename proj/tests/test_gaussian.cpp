// Covariance scenarios, PPT symplectic spectra and Gaussian log negativity.
//
// Benchmarks used below (r = 0.9):
//   two-mode squeezed vacuum at tau = 0:   nu_min = exp(-1.8)/2, E_N = 1.8 nats
//   separable pair at tau = pi/4:          same spectrum (maximally entangled)
//   lossy separable (consistent mode), fine-scan oracle over [0, pi/2]:
//     gamma/J = 0.1: first maximum 1.287089 at tau = 0.636722
//     gamma/J = 0.3: first maximum 0.821778 at tau = 0.532893

#include <doctest.h>

#include "cwg/gaussian.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace cwg;
using gaussian::CovarianceMatrix;
using gaussian::FormulaMode;
using gaussian::GaussianScenarioParams;
using gaussian::Scenario;

namespace {

constexpr double kPi = 3.14159265358979323846;

double e_n_nats(const gaussian::SymplecticPair& nu) {
    return std::max(0.0, -std::log(2.0 * nu.nu_minus));
}

}  // namespace

TEST_CASE("vacuum is its own partial transpose: nu = 1/2, E_N = 0") {
    const auto nu = gaussian::ppt_symplectic_eigenvalues(CovarianceMatrix::vacuum());
    CHECK(nu.nu_plus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(nu.nu_minus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(gaussian::log_negativity_gaussian(CovarianceMatrix::vacuum()) == 0.0);
}

TEST_CASE("two-mode squeezed vacuum: nu_min = exp(-2r)/2 at tau = 0") {
    const auto nu =
        gaussian::ppt_symplectic_eigenvalues(gaussian::cov_entangled_squeezed(0.9, 0.0));
    CHECK(nu.nu_minus == doctest::Approx(0.5 * std::exp(-1.8)).epsilon(1e-12));
    CHECK(gaussian::log_negativity_gaussian(gaussian::cov_entangled_squeezed(0.9, 0.0)) ==
          doctest::Approx(1.8).epsilon(1e-12));
}

TEST_CASE("separable pair reaches the same spectrum at tau = pi/4") {
    const auto sigma = gaussian::cov_separable_squeezed(0.9, kPi / 4);
    const auto nu = gaussian::ppt_symplectic_eigenvalues(sigma);
    CHECK(nu.nu_minus == doctest::Approx(0.5 * std::exp(-1.8)).epsilon(1e-12));
    CHECK(gaussian::log_negativity_gaussian(sigma) == doctest::Approx(1.8).epsilon(1e-12));
}

TEST_CASE("separable scenario: no squeezing means vacuum, and E_N = 0 at t = 0") {
    for (double tau : {0.0, 0.7, 2.0}) {
        CHECK((gaussian::cov_separable_squeezed(0.0, tau).matrix() -
               CovarianceMatrix::vacuum().matrix())
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }

    const auto at0 = gaussian::cov_separable_squeezed(0.9, 0.0);
    CHECK(at0.matrix()(0, 0) == doctest::Approx(0.5 * std::exp(1.8)).epsilon(1e-12));
    CHECK(at0.matrix()(1, 1) == doctest::Approx(0.5 * std::exp(-1.8)).epsilon(1e-12));
    CHECK(at0.matrix()(0, 3) == 0.0);
    CHECK(gaussian::log_negativity_gaussian(at0) == 0.0);
    CHECK(gaussian::log_negativity_gaussian(gaussian::cov_separable_squeezed(0.9, kPi / 2)) <
          1e-12);
}

TEST_CASE("lossless separability points and maxima") {
    for (int k = 0; k <= 4; ++k) {
        CHECK(gaussian::log_negativity_gaussian(
                  gaussian::cov_separable_squeezed(0.9, k * kPi / 2)) < 1e-10);
        CHECK(gaussian::log_negativity_gaussian(
                  gaussian::cov_separable_squeezed(0.9, kPi / 4 + k * kPi / 2)) ==
              doctest::Approx(1.8).epsilon(1e-10));

        CHECK(gaussian::log_negativity_gaussian(
                  gaussian::cov_entangled_squeezed(0.9, kPi / 4 + k * kPi / 2)) < 1e-10);
        CHECK(gaussian::log_negativity_gaussian(
                  gaussian::cov_entangled_squeezed(0.9, k * kPi / 2)) ==
              doctest::Approx(1.8).epsilon(1e-10));
    }
}

TEST_CASE("entangled and separable curves are pi/4 out of phase") {
    for (double r : {0.3, 0.9}) {
        double sup = 0.0;
        for (int k = 0; k <= 400; ++k) {
            const double tau = kPi * k / 400.0;
            const double ent =
                gaussian::log_negativity_gaussian(gaussian::cov_entangled_squeezed(r, tau));
            const double sep = gaussian::log_negativity_gaussian(
                gaussian::cov_separable_squeezed(r, tau + kPi / 4));
            sup = std::max(sup, std::abs(ent - sep));
        }
        CHECK(sup < 1e-10);
    }
}

TEST_CASE("lossy covariances reduce to the lossless ones at zero loss") {
    for (double tau : {0.0, 0.4, 1.3, 2.8}) {
        CHECK((gaussian::cov_separable_squeezed_lossy(0.9, tau, 0.0, FormulaMode::consistent)
                   .matrix() -
               gaussian::cov_separable_squeezed(0.9, tau).matrix())
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
        CHECK((gaussian::cov_entangled_squeezed_lossy(0.9, tau, 0.0).matrix() -
               gaussian::cov_entangled_squeezed(0.9, tau).matrix())
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
    }
}

TEST_CASE("paper-exact mode differs by sinh^2(r)/2 on the diagonal at zero loss") {
    const double r = 0.9;
    const double expected = 0.5 * std::sinh(r) * std::sinh(r);
    for (double tau : {0.0, 0.5, 1.7}) {
        const auto exact =
            gaussian::cov_separable_squeezed_lossy(r, tau, 0.0, FormulaMode::paper_exact);
        const auto lossless = gaussian::cov_separable_squeezed(r, tau);
        const Eigen::Matrix4d diff = lossless.matrix() - exact.matrix();
        CHECK(diff(0, 0) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(diff(1, 1) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(diff(0, 3)) < 1e-14);  // off-diagonal untouched
    }

    // as printed, the zero-loss variant has a negative variance at tau = 0
    const auto broken =
        gaussian::cov_separable_squeezed_lossy(0.9, 0.0, 0.0, FormulaMode::paper_exact);
    CHECK(broken.matrix()(1, 1) < 0.0);
    CHECK_THROWS_AS(gaussian::closed_form_nu(
                        Scenario::sep_lossy,
                        GaussianScenarioParams{0.9, 0.0, 0.0, FormulaMode::paper_exact}),
                    std::domain_error);
}

TEST_CASE("loss keeps the separable state separable over a finite window") {
    // gamma/J = 0.3: scan around tau = pi/2 for a zero run of positive length
    int zeros = 0;
    for (int k = 0; k <= 400; ++k) {
        const double tau = 1.2 + (2.0 - 1.2) * k / 400.0;
        const auto sigma =
            gaussian::cov_separable_squeezed_lossy(0.9, tau, 0.3, FormulaMode::consistent);
        if (gaussian::log_negativity_gaussian(sigma) == 0.0) ++zeros;
    }
    CHECK(zeros > 100);  // roughly [1.36, 1.82] out of [1.2, 2.0]
}

TEST_CASE("lossy entangled curve: full decay ends in vacuum") {
    const auto late = gaussian::cov_entangled_squeezed_lossy(0.9, 1e4, 0.1);
    CHECK((late.matrix() - CovarianceMatrix::vacuum().matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(gaussian::log_negativity_gaussian(late) == 0.0);
}

TEST_CASE("lossy entangled curve: successive maxima decrease") {
    double previous = 1e9;
    for (int period = 0; period < 4; ++period) {
        double best = 0.0;
        for (int k = 0; k < 400; ++k) {
            const double tau = period * kPi / 2 + (kPi / 2) * k / 400.0;
            best = std::max(best, gaussian::log_negativity_gaussian(
                                      gaussian::cov_entangled_squeezed_lossy(0.9, tau, 0.1)));
        }
        CHECK(best < previous);
        previous = best;
    }
}

TEST_CASE("lossy separable first-period maxima match the fine-scan oracle") {
    auto first_max = [](double loss) {
        double best = 0.0;
        for (int k = 0; k <= 20000; ++k) {
            const double tau = (kPi / 2) * k / 20000.0;
            best = std::max(
                best, e_n_nats(gaussian::closed_form_nu(
                          Scenario::sep_lossy, GaussianScenarioParams{0.9, tau, loss})));
        }
        return best;
    };
    CHECK(first_max(0.1) == doctest::Approx(1.287089).epsilon(1e-5));
    CHECK(first_max(0.3) == doctest::Approx(0.821778).epsilon(1e-5));
}

TEST_CASE("closed forms match the general route at the benchmark points") {
    // lossy entangled form at zero loss: m± = cosh 2r, so
    // nu_min = (cosh 2r - sinh 2r)/2 = exp(-2r)/2
    const auto ent_lossy =
        gaussian::closed_form_nu(Scenario::ent_lossy, GaussianScenarioParams{0.9, 0.0, 0.0});
    CHECK(ent_lossy.nu_minus == doctest::Approx(0.5 * std::exp(-1.8)).epsilon(1e-12));
    const auto ent_general =
        gaussian::ppt_symplectic_eigenvalues(gaussian::cov_entangled_squeezed_lossy(0.9, 0.0, 0.0));
    CHECK(std::abs(ent_lossy.nu_minus - ent_general.nu_minus) < 1e-12);

    const auto sep = gaussian::closed_form_nu(Scenario::sep_lossless,
                                              GaussianScenarioParams{0.9, kPi / 4, 0.0});
    const auto sep_general =
        gaussian::ppt_symplectic_eigenvalues(gaussian::cov_separable_squeezed(0.9, kPi / 4));
    CHECK(std::abs(sep.nu_minus - sep_general.nu_minus) < 1e-12);
    CHECK(std::abs(sep.nu_plus - sep_general.nu_plus) < 1e-12);

    const auto ent = gaussian::closed_form_nu(Scenario::ent_lossless,
                                              GaussianScenarioParams{1.3, 0.8, 0.0});
    const auto general =
        gaussian::ppt_symplectic_eigenvalues(gaussian::cov_entangled_squeezed(1.3, 0.8));
    CHECK(std::abs(ent.nu_minus - general.nu_minus) < 1e-12);
    CHECK(std::abs(ent.nu_plus - general.nu_plus) < 1e-12);
}

TEST_CASE("closed forms match the general symplectic route on the full grid") {
    const std::array<double, 3> rs = {0.3, 0.9, 1.5};
    const std::array<double, 3> losses = {0.0, 0.1, 0.3};
    for (double r : rs) {
        for (double loss : losses) {
            for (int k = 0; k <= 200; ++k) {
                const double tau = 2.0 * kPi * k / 200.0;

                const auto sep_tag = loss == 0.0 ? Scenario::sep_lossless : Scenario::sep_lossy;
                const auto ent_tag = loss == 0.0 ? Scenario::ent_lossless : Scenario::ent_lossy;

                for (auto mode : {FormulaMode::consistent, FormulaMode::paper_exact}) {
                    const GaussianScenarioParams params{r, tau, loss, mode};
                    const auto sigma_sep = loss == 0.0
                                               ? gaussian::cov_separable_squeezed(r, tau)
                                               : gaussian::cov_separable_squeezed_lossy(
                                                     r, tau, loss, mode);
                    // the printed lossy variant can leave the physical domain
                    // (indefinite sigma); there the closed form must refuse
                    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sigma_sep.matrix(),
                                                                      Eigen::EigenvaluesOnly);
                    if (es.eigenvalues().minCoeff() <= 0.0) {
                        CHECK_THROWS_AS(gaussian::closed_form_nu(sep_tag, params),
                                        std::domain_error);
                        continue;
                    }
                    const auto general = gaussian::ppt_symplectic_eigenvalues(sigma_sep);
                    const auto closed = gaussian::closed_form_nu(sep_tag, params);
                    CHECK(std::abs(general.nu_plus - closed.nu_plus) < 1e-10);
                    CHECK(std::abs(general.nu_minus - closed.nu_minus) < 1e-10);
                }

                const GaussianScenarioParams params{r, tau, loss};
                const auto sigma_ent = loss == 0.0
                                           ? gaussian::cov_entangled_squeezed(r, tau)
                                           : gaussian::cov_entangled_squeezed_lossy(r, tau, loss);
                const auto general = gaussian::ppt_symplectic_eigenvalues(sigma_ent);
                const auto closed = gaussian::closed_form_nu(ent_tag, params);
                CHECK(std::abs(general.nu_plus - closed.nu_plus) < 1e-10);
                CHECK(std::abs(general.nu_minus - closed.nu_minus) < 1e-10);
            }
        }
    }
}

TEST_CASE("generated covariances are physical states") {
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> rd(0.0, 2.0);
    std::uniform_real_distribution<double> taud(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> lossd(0.0, 0.5);
    for (int trial = 0; trial < 400; ++trial) {
        const double r = rd(gen);
        const double tau = taud(gen);
        const double loss = lossd(gen);
        for (const auto& sigma :
             {gaussian::cov_separable_squeezed(r, tau), gaussian::cov_entangled_squeezed(r, tau),
              gaussian::cov_separable_squeezed_lossy(r, tau, loss, FormulaMode::consistent),
              gaussian::cov_entangled_squeezed_lossy(r, tau, loss)}) {
            CHECK(gaussian::is_physical_state(sigma, 1e-10));
            // discriminant route: well conditioned only away from the pure
            // degenerate point, hence the looser bound
            CHECK(gaussian::state_symplectic_eigenvalues(sigma).nu_minus >= 0.5 - 1e-4);
        }
    }
}

TEST_CASE("malformed covariances are rejected") {
    Eigen::Matrix4d asym = Eigen::Matrix4d::Identity();
    asym(0, 1) = 1e-3;
    CHECK_THROWS_AS(CovarianceMatrix{asym}, std::invalid_argument);

    Eigen::Matrix4d indefinite = Eigen::Matrix4d::Identity() * 0.5;
    indefinite(1, 1) = -0.5;
    indefinite(3, 3) = -0.5;
    CHECK_THROWS_AS(gaussian::ppt_symplectic_eigenvalues(CovarianceMatrix(indefinite)),
                    std::domain_error);
}

TEST_CASE("log base switch: bits = nats / ln 2") {
    const auto sigma = gaussian::cov_entangled_squeezed(0.9, 0.0);
    const double nats = gaussian::log_negativity_gaussian(sigma, negativity::LogBase::e);
    const double bits = gaussian::log_negativity_gaussian(sigma, negativity::LogBase::two);
    CHECK(bits == doctest::Approx(nats / std::numbers::ln2).epsilon(1e-14));
    CHECK(nats == doctest::Approx(1.8).epsilon(1e-12));
}
