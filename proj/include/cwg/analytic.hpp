// analytic.hpp — closed-form evolutions of the lossless coupler for photon-
// number inputs, and the exact lossy |1,1> density matrix.

#pragma once

#include "cwg/fock.hpp"

namespace cwg::analytic {

/// Amplitudes of |2,0>, |1,1>, |0,2> for a state confined to the two-photon
/// block. |alpha|^2 + |beta|^2 + |delta|^2 = 1.
struct ThreeCoefficients {
    fock::Complex alpha;
    fock::Complex beta;
    fock::Complex delta;
};

/// |1,1> after a dimensionless time tau = Jt:
///   alpha = delta = -i sin(2 tau)/sqrt(2),  beta = cos(2 tau).
ThreeCoefficients one_one_coefficients(double tau);

/// |2,0> after tau:
///   alpha = cos^2 tau,  beta = -sqrt(2) i cos tau sin tau,  delta = -sin^2 tau.
ThreeCoefficients two_zero_coefficients(double tau);

/// Amplitudes beta_k on |k, N-k> for an evolved N-photon NOON input
/// (|N,0> + |0,N>)/sqrt(2). Normalized so that sum |beta_k|^2 = 1, and
/// symmetric: beta_k = beta_{N-k}.
struct NoonCoefficients {
    int photon_number;      // N
    Eigen::VectorXcd beta;  // k = 0..N
};

/// Each input branch evolves into sum_k alpha_k |k, N-k> with
///   alpha_k = sqrt(C(N,k)) (cos tau)^k (-i sin tau)^{N-k};
/// the NOON output is the normalized sum of the two branches,
///   beta_k = (alpha_k + alpha_{N-k}) / sqrt(2).
/// Throws std::domain_error for photon_number < 1.
NoonCoefficients noon_coefficients(int photon_number, double tau);

/// State vector (|N,0> + |0,N>)/sqrt(2) on the cutoff n_max = N.
fock::PureState noon_input(int photon_number);

fock::PureState to_state(const ThreeCoefficients& c);  // cutoff n_max = 2
fock::PureState to_state(const NoonCoefficients& c);   // cutoff n_max = N

/// Exact density matrix of an initial |1,1> in two equally lossy coupled
/// modes. In the frame co-rotating with the coupler the state is a product
/// of two amplitude-damping channels with single-photon survival
/// exp(-2 gamma t),
///   rho_damped = e^{-4gt} { (e^{2gt}-1)^2 |00><00|
///                           + (e^{2gt}-1)(|10><10| + |01><01|) + |11><11| },
/// with gt = loss_ratio * tau; the returned operator is rho_damped conjugated
/// back by the coupler unitary at tau. Unit trace, positive semidefinite.
/// Throws std::domain_error for loss_ratio < 0 or tau < 0.
fock::DensityOperator lossy_one_one_density(double tau, double loss_ratio);

}  // namespace cwg::analytic
