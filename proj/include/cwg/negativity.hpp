// negativity.hpp — logarithmic negativity of two-mode Fock-basis states:
// the general partial-transpose route and the closed-form special cases.

#pragma once

#include "cwg/fock.hpp"

namespace cwg::negativity {

enum class LogBase { two, e };

/// Converts a value expressed in the given base to the other one.
double convert_base(double value, LogBase from, LogBase to);

struct NegativityResult {
    double e_n;    // log negativity, in `base`
    double n_rho;  // |sum of negative partial-transpose eigenvalues|
    LogBase base;
};

/// Transpose on mode b:
///   <n_a, n_b| rho^T |m_a, m_b> = <n_a, m_b| rho |m_a, n_b>.
/// The result is Hermitian with unit trace; applying it twice restores rho.
Eigen::MatrixXcd partial_transpose(const fock::DensityOperator& rho);

/// E_N = log_base(1 + 2 N(rho)) from the partial-transpose spectrum.
/// Eigenvalues within 1e-12 of zero are clamped to zero so separability
/// points come out exactly. Throws std::invalid_argument when the trace
/// deviates from 1 by more than 1e-6.
NegativityResult log_negativity_density(const fock::DensityOperator& rho,
                                        LogBase base = LogBase::two);

/// Base-2 log negativity of a pure state sum_k c_k |k, N-k> confined to one
/// total-photon-number block: E_N = log2((sum_k |c_k|)^2). Throws
/// std::invalid_argument when sum |c_k|^2 deviates from 1 by more than 1e-10.
double log_negativity_pure_bipartite(const Eigen::VectorXcd& sector_coefficients);

/// Base-2 log negativity of the evolved |1,1> input,
///   E_N = log2(1 + 2(|alpha beta| + |alpha delta| + |delta beta|)).
double one_one_logneg_analytic(double tau);

/// Base-2 log negativity of the evolved N-photon NOON input,
///   E_N = log2(1 + sum_{k != m} |beta_k||beta_m|)
/// with the ordered double-count evaluated as (sum|beta_k|)^2 - sum|beta_k|^2.
double noon_logneg_analytic(int photon_number, double tau);

}  // namespace cwg::negativity
