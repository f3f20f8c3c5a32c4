#include "cwg/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cwg::analytic {

namespace {

using fock::Complex;
using fock::Matrix;
using fock::ModeCutoff;
using fock::Vector;

const Complex kImag{0.0, 1.0};

// (-i)^m
Complex minus_i_pow(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

// Full coupler propagator, assembled column by column from the block-exact
// evolution. Only used at tiny dimensions.
Matrix propagator(ModeCutoff cutoff, double tau) {
    Matrix u(cutoff.dim(), cutoff.dim());
    for (int j = 0; j < cutoff.dim(); ++j) {
        Vector e = Vector::Zero(cutoff.dim());
        e(j) = 1.0;
        u.col(j) = fock::evolve_unitary(fock::PureState(std::move(e), cutoff), tau).amplitudes;
    }
    return u;
}

}  // namespace

ThreeCoefficients one_one_coefficients(double tau) {
    if (!std::isfinite(tau)) {
        throw std::domain_error("one_one_coefficients: tau is not finite");
    }
    const Complex off = -kImag * std::sin(2.0 * tau) / std::sqrt(2.0);
    return ThreeCoefficients{off, Complex{std::cos(2.0 * tau), 0.0}, off};
}

ThreeCoefficients two_zero_coefficients(double tau) {
    if (!std::isfinite(tau)) {
        throw std::domain_error("two_zero_coefficients: tau is not finite");
    }
    const double c = std::cos(tau);
    const double s = std::sin(tau);
    return ThreeCoefficients{Complex{c * c, 0.0}, -std::sqrt(2.0) * kImag * c * s,
                             Complex{-s * s, 0.0}};
}

NoonCoefficients noon_coefficients(int photon_number, double tau) {
    if (photon_number < 1) {
        throw std::domain_error("noon_coefficients: photon number must be >= 1, got " +
                                std::to_string(photon_number));
    }
    const int n = photon_number;
    const double c = std::cos(tau);
    const double s = std::sin(tau);

    Eigen::VectorXcd alpha(n + 1);
    double binom = 1.0;  // C(n, k), updated iteratively
    for (int k = 0; k <= n; ++k) {
        alpha(k) = std::sqrt(binom) * std::pow(c, k) * std::pow(s, n - k) * minus_i_pow(n - k);
        binom *= double(n - k) / double(k + 1);
    }

    Eigen::VectorXcd beta(n + 1);
    for (int k = 0; k <= n; ++k) {
        beta(k) = (alpha(k) + alpha(n - k)) / std::sqrt(2.0);
    }
    return NoonCoefficients{n, std::move(beta)};
}

fock::PureState noon_input(int photon_number) {
    if (photon_number < 1) {
        throw std::domain_error("noon_input: photon number must be >= 1");
    }
    const ModeCutoff cutoff(photon_number);
    Vector v = Vector::Zero(cutoff.dim());
    v(fock::basis_index(photon_number, 0, cutoff)) = 1.0 / std::sqrt(2.0);
    v(fock::basis_index(0, photon_number, cutoff)) = 1.0 / std::sqrt(2.0);
    return fock::PureState(std::move(v), cutoff);
}

fock::PureState to_state(const ThreeCoefficients& c) {
    const ModeCutoff cutoff(2);
    Vector v = Vector::Zero(cutoff.dim());
    v(fock::basis_index(2, 0, cutoff)) = c.alpha;
    v(fock::basis_index(1, 1, cutoff)) = c.beta;
    v(fock::basis_index(0, 2, cutoff)) = c.delta;
    return fock::PureState(std::move(v), cutoff);
}

fock::PureState to_state(const NoonCoefficients& c) {
    const ModeCutoff cutoff(c.photon_number);
    Vector v = Vector::Zero(cutoff.dim());
    for (int k = 0; k <= c.photon_number; ++k) {
        v(fock::basis_index(k, c.photon_number - k, cutoff)) = c.beta(k);
    }
    return fock::PureState(std::move(v), cutoff);
}

fock::DensityOperator lossy_one_one_density(double tau, double loss_ratio) {
    if (loss_ratio < 0.0) {
        throw std::domain_error("lossy_one_one_density: loss ratio must be >= 0");
    }
    if (tau < 0.0 || !std::isfinite(tau)) {
        throw std::domain_error("lossy_one_one_density: tau must be finite and >= 0");
    }

    const ModeCutoff cutoff(2);
    const double gt = loss_ratio * tau;
    const double grow = std::exp(2.0 * gt) - 1.0;
    const double weight = std::exp(-4.0 * gt);

    Matrix damped = Matrix::Zero(cutoff.dim(), cutoff.dim());
    const int i00 = fock::basis_index(0, 0, cutoff);
    const int i10 = fock::basis_index(1, 0, cutoff);
    const int i01 = fock::basis_index(0, 1, cutoff);
    const int i11 = fock::basis_index(1, 1, cutoff);
    damped(i00, i00) = weight * grow * grow;
    damped(i10, i10) = weight * grow;
    damped(i01, i01) = weight * grow;
    damped(i11, i11) = weight;

    const Matrix u = propagator(cutoff, tau);
    Matrix rho = u * damped * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return fock::DensityOperator(std::move(rho), cutoff);
}

}  // namespace cwg::analytic
