#include "cwg/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cwg::gaussian {

namespace {

constexpr double kDomainSlack = 1e-10;

SymplecticPair symplectic_from_delta(double delta, double det_sigma) {
    double disc = delta * delta - 4.0 * det_sigma;
    // One ulp of determinant noise turns into sqrt(ulp) of spurious
    // eigenvalue splitting at a degenerate spectrum; anything below the
    // rounding floor of the two products counts as exactly degenerate.
    const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                               (delta * delta + std::abs(4.0 * det_sigma));
    if (disc < -std::max(kDomainSlack, noise_floor)) {
        throw std::domain_error("symplectic eigenvalues: discriminant " +
                                std::to_string(disc) + " < 0, unphysical covariance");
    }
    if (disc < noise_floor) disc = 0.0;
    const double root = std::sqrt(disc);
    const double nu_plus_sq = 0.5 * (delta + root);
    const double nu_minus_sq = 0.5 * (delta - root);
    if (nu_minus_sq < -kDomainSlack) {
        throw std::domain_error("symplectic eigenvalues: nu^2 = " +
                                std::to_string(nu_minus_sq) + " < 0, unphysical covariance");
    }
    return SymplecticPair{std::sqrt(std::max(nu_plus_sq, 0.0)),
                          std::sqrt(std::max(nu_minus_sq, 0.0))};
}

SymplecticPair sorted_pair(double first, double second) {
    SymplecticPair pair =
        first >= second ? SymplecticPair{first, second} : SymplecticPair{second, first};
    // Physical partial transposes always have strictly positive spectra.
    if (pair.nu_minus <= 0.0) {
        throw std::domain_error("closed_form_nu: symplectic eigenvalue " +
                                std::to_string(pair.nu_minus) + " <= 0, unphysical covariance");
    }
    return pair;
}

// A = B = diag(c, d), C = antidiag(e, e)
Eigen::Matrix4d separable_shape(double c, double d, double e) {
    Eigen::Matrix4d m;
    m << c, 0, 0, e,
         0, d, e, 0,
         0, e, c, 0,
         e, 0, 0, d;
    return m;
}

// A = B = [[f, g], [g, f]], C = diag(h, -h)
Eigen::Matrix4d entangled_shape(double f, double g, double h) {
    Eigen::Matrix4d m;
    m << f, g, h, 0,
         g, f, 0, -h,
         h, 0, f, g,
         0, -h, g, f;
    return m;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix4d& m) {
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw std::invalid_argument("CovarianceMatrix: asymmetric by " + std::to_string(asym));
    }
    m_ = 0.5 * (m + m.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum() {
    return CovarianceMatrix(0.5 * Eigen::Matrix4d::Identity());
}

SymplecticPair ppt_symplectic_eigenvalues(const CovarianceMatrix& sigma) {
    const double delta = sigma.mode_a_block().determinant() +
                         sigma.mode_b_block().determinant() -
                         2.0 * sigma.cross_block().determinant();
    return symplectic_from_delta(delta, sigma.matrix().determinant());
}

SymplecticPair state_symplectic_eigenvalues(const CovarianceMatrix& sigma) {
    const double delta = sigma.mode_a_block().determinant() +
                         sigma.mode_b_block().determinant() +
                         2.0 * sigma.cross_block().determinant();
    return symplectic_from_delta(delta, sigma.matrix().determinant());
}

bool is_physical_state(const CovarianceMatrix& sigma, double tolerance) {
    Eigen::Matrix4cd witness = sigma.matrix().cast<std::complex<double>>();
    const std::complex<double> half_i{0.0, 0.5};
    witness(0, 1) += half_i;
    witness(1, 0) -= half_i;
    witness(2, 3) += half_i;
    witness(3, 2) -= half_i;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(witness, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tolerance;
}

double log_negativity_gaussian(const CovarianceMatrix& sigma, negativity::LogBase base) {
    const double nu_min = ppt_symplectic_eigenvalues(sigma).nu_minus;
    const double nats = std::max(0.0, -std::log(2.0 * nu_min));
    return negativity::convert_base(nats, negativity::LogBase::e, base);
}

CovarianceMatrix cov_separable_squeezed(double r, double tau) {
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    const double c = 0.5 * (ch + sh * std::cos(2.0 * tau));
    const double d = 0.5 * (ch - sh * std::cos(2.0 * tau));
    const double e = -0.5 * sh * std::sin(2.0 * tau);
    return CovarianceMatrix(separable_shape(c, d, e));
}

CovarianceMatrix cov_entangled_squeezed(double r, double tau) {
    const double f = 0.5 * std::cosh(2.0 * r);
    const double g = -0.5 * std::sinh(2.0 * r) * std::sin(2.0 * tau);
    const double h = 0.5 * std::sinh(2.0 * r) * std::cos(2.0 * tau);
    return CovarianceMatrix(entangled_shape(f, g, h));
}

CovarianceMatrix cov_separable_squeezed_lossy(double r, double tau, double loss_ratio,
                                              FormulaMode mode) {
    if (loss_ratio < 0.0) {
        throw std::domain_error("cov_separable_squeezed_lossy: loss ratio must be >= 0");
    }
    const double decay = std::exp(-2.0 * loss_ratio * tau);
    const double sh2 = std::sinh(r) * std::sinh(r);
    const double sh = std::sinh(2.0 * r);
    const double osc = 0.5 * decay * sh * std::cos(2.0 * tau);
    const double e = -0.5 * decay * sh * std::sin(2.0 * tau);

    double c, d;
    if (mode == FormulaMode::consistent) {
        c = 0.5 + decay * sh2 + osc;
        d = 0.5 + decay * sh2 - osc;
    } else {
        c = 0.5 * (1.0 + decay * sh2) + osc;
        d = 0.5 * (1.0 + decay * sh2) - osc;
    }
    return CovarianceMatrix(separable_shape(c, d, e));
}

CovarianceMatrix cov_entangled_squeezed_lossy(double r, double tau, double loss_ratio) {
    if (loss_ratio < 0.0) {
        throw std::domain_error("cov_entangled_squeezed_lossy: loss ratio must be >= 0");
    }
    const double decay = std::exp(-2.0 * loss_ratio * tau);
    const double f = 0.5 + decay * std::sinh(r) * std::sinh(r);
    const double g = -0.5 * decay * std::sinh(2.0 * r) * std::sin(2.0 * tau);
    const double h = 0.5 * decay * std::sinh(2.0 * r) * std::cos(2.0 * tau);
    return CovarianceMatrix(entangled_shape(f, g, h));
}

SymplecticPair closed_form_nu(Scenario scenario, const GaussianScenarioParams& params) {
    const double r = params.r;
    const double tau = params.tau;
    switch (scenario) {
        case Scenario::sep_lossless: {
            const auto sigma = cov_separable_squeezed(r, tau);
            const double c = sigma.matrix()(0, 0);
            const double d = sigma.matrix()(1, 1);
            const double e = sigma.matrix()(0, 3);
            const double root = std::sqrt(c * d);
            return sorted_pair(root + e, root - e);
        }
        case Scenario::ent_lossless: {
            const auto sigma = cov_entangled_squeezed(r, tau);
            const double f = sigma.matrix()(0, 0);
            const double g = sigma.matrix()(0, 1);
            const double h = sigma.matrix()(0, 2);
            const double root = std::sqrt((f + g) * (f - g));
            return sorted_pair(root + h, root - h);
        }
        case Scenario::sep_lossy: {
            const auto sigma = cov_separable_squeezed_lossy(r, tau, params.loss_ratio,
                                                            params.formula_mode);
            const double c = sigma.matrix()(0, 0);
            const double d = sigma.matrix()(1, 1);
            const double e = sigma.matrix()(0, 3);
            const double cd = c * d;
            if (cd < 0.0) {
                throw std::domain_error("closed_form_nu: c'd' < 0, unphysical covariance");
            }
            const double root = std::sqrt(cd);
            return sorted_pair(root + e, root - e);
        }
        case Scenario::ent_lossy: {
            const double decay = std::exp(-2.0 * params.loss_ratio * tau);
            const double ch = std::cosh(2.0 * r);
            const double sh_sin = std::sinh(2.0 * r) * std::sin(2.0 * tau);
            const double m_plus = 1.0 - decay * (1.0 - (ch + sh_sin));
            const double m_minus = 1.0 - decay * (1.0 - (ch - sh_sin));
            const double h = 0.5 * decay * std::sinh(2.0 * r) * std::cos(2.0 * tau);
            const double root = 0.5 * std::sqrt(m_plus * m_minus);
            return sorted_pair(root + h, root - h);
        }
    }
    throw std::domain_error("closed_form_nu: unknown scenario tag");
}

}  // namespace cwg::gaussian
