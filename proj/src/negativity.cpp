#include "cwg/negativity.hpp"

#include "cwg/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cwg::negativity {

namespace {

constexpr double kEigenvalueClamp = 1e-12;

}  // namespace

double convert_base(double value, LogBase from, LogBase to) {
    if (from == to) return value;
    return from == LogBase::two ? value * std::numbers::ln2 : value / std::numbers::ln2;
}

Eigen::MatrixXcd partial_transpose(const fock::DensityOperator& rho) {
    const int p = rho.cutoff.per_mode();
    Eigen::MatrixXcd out(rho.cutoff.dim(), rho.cutoff.dim());
    for (int n_a = 0; n_a < p; ++n_a) {
        for (int n_b = 0; n_b < p; ++n_b) {
            for (int m_a = 0; m_a < p; ++m_a) {
                for (int m_b = 0; m_b < p; ++m_b) {
                    out(n_a * p + n_b, m_a * p + m_b) = rho.matrix(n_a * p + m_b, m_a * p + n_b);
                }
            }
        }
    }
    return out;
}

NegativityResult log_negativity_density(const fock::DensityOperator& rho, LogBase base) {
    const double trace_dev = std::abs(rho.matrix.trace() - fock::Complex{1.0, 0.0});
    if (trace_dev > 1e-6) {
        throw std::invalid_argument("log_negativity_density: trace deviates from 1 by " +
                                    std::to_string(trace_dev));
    }

    Eigen::MatrixXcd pt = partial_transpose(rho);
    pt = 0.5 * (pt + pt.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);

    double negative_sum = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()(i);
        if (lambda < -kEigenvalueClamp) {
            negative_sum += -lambda;
        }
    }
    const double e_n = std::log1p(2.0 * negative_sum) / std::numbers::ln2;
    return NegativityResult{convert_base(e_n, LogBase::two, base), negative_sum, base};
}

double log_negativity_pure_bipartite(const Eigen::VectorXcd& sector_coefficients) {
    const double norm_sq = sector_coefficients.squaredNorm();
    if (std::abs(norm_sq - 1.0) > 1e-10) {
        throw std::invalid_argument(
            "log_negativity_pure_bipartite: squared norm deviates from 1 by " +
            std::to_string(std::abs(norm_sq - 1.0)));
    }
    const double abs_sum = sector_coefficients.cwiseAbs().sum();
    return 2.0 * std::log2(abs_sum);
}

double one_one_logneg_analytic(double tau) {
    const auto c = analytic::one_one_coefficients(tau);
    const double pair_sum = std::abs(c.alpha * c.beta) + std::abs(c.alpha * c.delta) +
                            std::abs(c.delta * c.beta);
    return std::log1p(2.0 * pair_sum) / std::numbers::ln2;
}

double noon_logneg_analytic(int photon_number, double tau) {
    const auto c = analytic::noon_coefficients(photon_number, tau);
    const double abs_sum = c.beta.cwiseAbs().sum();
    const double sq_sum = c.beta.squaredNorm();
    return std::log1p(abs_sum * abs_sum - sq_sum) / std::numbers::ln2;
}

}  // namespace cwg::negativity
