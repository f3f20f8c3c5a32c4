// Master-equation oracle: generator structure, integrator contracts,
// squeezed-state constructors and covariance extraction.

#include <doctest.h>

#include "cwg/analytic.hpp"
#include "cwg/lindblad.hpp"
#include "cwg/negativity.hpp"

#include <cmath>
#include <random>

using namespace cwg;
using fock::Complex;
using fock::DensityOperator;
using fock::Matrix;
using fock::ModeCutoff;
using fock::PureState;

namespace {

constexpr double kPi = 3.14159265358979323846;

DensityOperator random_density(ModeCutoff cutoff, std::mt19937& gen) {
    std::normal_distribution<double> nd;
    Matrix g(cutoff.dim(), cutoff.dim());
    for (int i = 0; i < cutoff.dim(); ++i)
        for (int j = 0; j < cutoff.dim(); ++j) g(i, j) = Complex(nd(gen), nd(gen));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(std::move(rho), cutoff);
}

double trace_distance(const Matrix& a, const Matrix& b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double mean_photons_per_mode(const PureState& psi, fock::Mode mode) {
    double acc = 0.0;
    for (int na = 0; na <= psi.cutoff.n_max; ++na) {
        for (int nb = 0; nb <= psi.cutoff.n_max; ++nb) {
            acc += (mode == fock::Mode::a ? na : nb) * std::norm(psi.amplitude(na, nb));
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("the vacuum is stationary") {
    const auto vacuum = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(1), 0, 0));
    CHECK(lindblad::liouvillian_rhs(vacuum, 0.7).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("one-photon projector drains at rate 2 gamma/J") {
    const ModeCutoff cutoff(1);
    const auto rho = DensityOperator::from_pure(PureState::basis_state(cutoff, 1, 0));
    const double loss = 0.23;
    const auto rhs = lindblad::liouvillian_rhs(rho, loss);
    const int i10 = fock::basis_index(1, 0, cutoff);
    const int i00 = fock::basis_index(0, 0, cutoff);
    CHECK(rhs(i10, i10).real() == doctest::Approx(-2.0 * loss).epsilon(1e-14));
    CHECK(rhs(i00, i00).real() == doctest::Approx(2.0 * loss).epsilon(1e-14));
}

TEST_CASE("the generator is trace-free") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> lossd(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto rho = random_density(ModeCutoff(1 + trial % 3), gen);
        CHECK(std::abs(lindblad::liouvillian_rhs(rho, lossd(gen)).trace()) < 1e-13);
    }
    CHECK_THROWS_AS(lindblad::liouvillian_rhs(random_density(ModeCutoff(1), gen), -0.1),
                    std::domain_error);
}

TEST_CASE("integrating for zero time returns the input") {
    std::mt19937 gen(13);
    const auto rho = random_density(ModeCutoff(2), gen);
    const auto out = lindblad::integrate_master_equation(rho, 0.0, 0.5);
    CHECK((out.matrix - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lossless integration reproduces the two-photon interference state") {
    const auto rho0 = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(2), 1, 1));
    const auto numeric = lindblad::integrate_master_equation(rho0, kPi / 4, 0.0);
    const auto closed = DensityOperator::from_pure(
        analytic::to_state(analytic::one_one_coefficients(kPi / 4)));
    CHECK(trace_distance(numeric.matrix, closed.matrix) < 1e-8);
}

TEST_CASE("lossy integration matches the exact damped |1,1> solution") {
    const auto rho0 = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(2), 1, 1));
    for (double loss : {0.1, 0.3}) {
        const auto numeric = lindblad::integrate_master_equation(rho0, kPi / 5, loss);
        const auto closed = analytic::lossy_one_one_density(kPi / 5, loss);
        CHECK(trace_distance(numeric.matrix, closed.matrix) < 1e-6);
    }
}

TEST_CASE("integrator post-conditions: trace, Hermiticity, positivity") {
    const auto rho0 = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(2), 1, 1));
    for (double tau : {0.05, 0.7, 2.3}) {
        const auto out = lindblad::integrate_master_equation(rho0, tau, 0.2);
        CHECK(std::abs(out.trace_real() - 1.0) < 1e-10);
        CHECK((out.matrix - out.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        Eigen::SelfAdjointEigenSolver<Matrix> es(out.matrix, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }
}

TEST_CASE("a reckless step size fails the halving check instead of lying") {
    const auto rho0 = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(2), 1, 1));
    lindblad::IntegratorConfig config;
    config.step = 0.8;
    config.trace_tolerance = 1e-9;
    CHECK_THROWS_AS(lindblad::integrate_master_equation(rho0, kPi, 0.1, config),
                    lindblad::accuracy_error);
}

TEST_CASE("total photon number decays as exp(-2 gamma t / J) under coupling") {
    const auto rho0 = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(2), 1, 1));
    const ModeCutoff cutoff(2);
    const Matrix a = fock::mode_operator(fock::Mode::a, cutoff).matrix;
    const Matrix b = fock::mode_operator(fock::Mode::b, cutoff).matrix;
    const Matrix number = a.adjoint() * a + b.adjoint() * b;
    const double loss = 0.25;
    for (double tau : {0.3, 0.9, 1.8}) {
        const auto out = lindblad::integrate_master_equation(rho0, tau, loss);
        const double energy = (out.matrix * number).trace().real();
        CHECK(std::abs(energy - 2.0 * std::exp(-2.0 * loss * tau)) < 1e-8);
    }
}

TEST_CASE("purity: invariant without loss, non-increasing before the revival window") {
    const auto rho0 = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(2), 1, 1));

    auto purity = [](const Matrix& m) { return (m * m).trace().real(); };

    // gamma = 0: coupled evolution is unitary, purity stays 1
    for (double tau : {0.4, 1.1, 2.7}) {
        const auto out = lindblad::integrate_master_equation(rho0, tau, 0.0);
        CHECK(std::abs(purity(out.matrix) - 1.0) < 1e-10);
    }

    // amplitude damping from a pure state loses purity monotonically until
    // the survival probability crosses 1/2 (2 gamma t = ln 2); sample inside
    // that window only, since the decay toward vacuum re-purifies later
    double previous = 1.0;
    for (int k = 1; k <= 12; ++k) {
        const double tau = 0.05 * k;  // 2 gamma t up to 0.6 < ln 2
        const auto out = lindblad::integrate_master_equation(rho0, tau, 0.5);
        const double p = purity(out.matrix);
        CHECK(p <= previous + 1e-10);
        previous = p;
    }
}

TEST_CASE("squeezed product state: no squeezing gives the vacuum") {
    const auto psi = lindblad::single_mode_squeezed_fock(0.0, ModeCutoff(4));
    CHECK(std::abs(psi.amplitude(0, 0) - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-15);
}

TEST_CASE("squeezed product state reproduces the separable covariance at t = 0") {
    const double r = 0.3;
    const auto psi = lindblad::single_mode_squeezed_fock(r, ModeCutoff(20));
    const auto sigma = lindblad::covariance_from_density(DensityOperator::from_pure(psi));
    const auto expected = gaussian::cov_separable_squeezed(r, 0.0);
    CHECK((sigma.matrix() - expected.matrix()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("two-mode squeezed vacuum: mean photons and covariance at t = 0") {
    const double r = 0.3;
    const auto psi = lindblad::two_mode_squeezed_fock(r, ModeCutoff(25));
    const double expected_n = std::sinh(r) * std::sinh(r);
    CHECK(mean_photons_per_mode(psi, fock::Mode::a) ==
          doctest::Approx(expected_n).epsilon(1e-10));
    CHECK(mean_photons_per_mode(psi, fock::Mode::b) ==
          doctest::Approx(expected_n).epsilon(1e-10));

    const auto sigma = lindblad::covariance_from_density(DensityOperator::from_pure(psi));
    const auto expected = gaussian::cov_entangled_squeezed(r, 0.0);
    CHECK((sigma.matrix() - expected.matrix()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("a cutoff that clips real population is refused with the needed size") {
    CHECK_THROWS_AS(lindblad::single_mode_squeezed_fock(1.2, ModeCutoff(4)),
                    lindblad::truncation_error);
    try {
        lindblad::two_mode_squeezed_fock(1.2, ModeCutoff(4));
        FAIL("expected truncation_error");
    } catch (const lindblad::truncation_error& e) {
        CHECK(e.required_n_max() > 4);
        CHECK(std::string(e.what()).find("n_max") != std::string::npos);
    }
}

TEST_CASE("default squeezed cutoff passes the tail rule") {
    for (double r : {0.1, 0.3, 0.9}) {
        const ModeCutoff cutoff(lindblad::default_squeezed_cutoff(r));
        CHECK_NOTHROW(lindblad::single_mode_squeezed_fock(r, cutoff));
        CHECK_NOTHROW(lindblad::two_mode_squeezed_fock(r, cutoff));
    }
}

TEST_CASE("covariance of the vacuum is diag(1/2)") {
    const auto vac = DensityOperator::from_pure(PureState::basis_state(ModeCutoff(2), 0, 0));
    const auto sigma = lindblad::covariance_from_density(vac);
    CHECK((sigma.matrix() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("covariance extraction rejects displaced states") {
    const ModeCutoff cutoff(1);
    fock::Vector v = fock::Vector::Zero(cutoff.dim());
    v(fock::basis_index(0, 0, cutoff)) = 1.0 / std::sqrt(2.0);
    v(fock::basis_index(1, 0, cutoff)) = 1.0 / std::sqrt(2.0);
    const auto displaced = DensityOperator::from_pure(PureState(v, cutoff));
    CHECK_THROWS_AS(lindblad::covariance_from_density(displaced), std::invalid_argument);
}

TEST_CASE("evolved lossy two-mode squeezed state reproduces the lossy covariance") {
    const double r = 0.3;
    const double tau = 0.7;
    const double loss = 0.1;
    const auto psi = lindblad::two_mode_squeezed_fock(r, ModeCutoff(12));
    lindblad::IntegratorConfig config;
    config.step = 5e-3;
    config.trace_tolerance = 1e-6;
    const auto rho = lindblad::integrate_master_equation(DensityOperator::from_pure(psi), tau,
                                                         loss, config);
    const auto sigma = lindblad::covariance_from_density(rho);
    const auto expected = gaussian::cov_entangled_squeezed_lossy(r, tau, loss);
    CHECK((sigma.matrix() - expected.matrix()).cwiseAbs().maxCoeff() < 1e-6);
}
