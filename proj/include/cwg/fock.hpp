// fock.hpp — truncated two-mode Fock space: basis layout, ladder operators,
// the coupler Hamiltonian and exact unitary propagation.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace cwg::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Per-mode photon-number cutoff. The joint basis is |n_a, n_b> with
/// 0 <= n_a, n_b <= n_max, laid out row-major in (n_a, n_b); every operator
/// matrix in this namespace is square of dimension (n_max+1)^2.
struct ModeCutoff {
    explicit ModeCutoff(int n_max);

    int n_max;
    int per_mode() const { return n_max + 1; }
    int dim() const { return per_mode() * per_mode(); }

    bool operator==(const ModeCutoff&) const = default;
};

/// Row-major joint index of |n_a, n_b>. Throws std::domain_error when a
/// photon count is outside [0, n_max].
int basis_index(int n_a, int n_b, ModeCutoff cutoff);

enum class Mode { a, b };

/// Annihilation operator of one mode, identity-extended to the other.
struct ModeOperator {
    Matrix matrix;
    Mode mode;
    ModeCutoff cutoff;
};

// <n-1|c|n> = sqrt(n) on the tagged mode.
ModeOperator mode_operator(Mode mode, ModeCutoff cutoff);

/// Coupler Hamiltonian a†b + b†a in units of hbar*J. Hermitian and block
/// diagonal in the total photon number n_a + n_b.
Matrix coupler_hamiltonian(ModeCutoff cutoff);

/// Normalized state of the two coupled modes.
struct PureState {
    PureState(Vector amplitudes, ModeCutoff cutoff);

    static PureState basis_state(ModeCutoff cutoff, int n_a, int n_b);

    Complex amplitude(int n_a, int n_b) const;
    double norm() const { return amplitudes.norm(); }

    Vector amplitudes;
    ModeCutoff cutoff;
};

/// Mixed state of the two coupled modes. The constructor enforces
/// Hermiticity (1e-12) and unit trace (1e-10); positivity is a dynamical
/// property checked by the test suite, not a construction gate.
struct DensityOperator {
    DensityOperator(Matrix matrix, ModeCutoff cutoff);

    static DensityOperator from_pure(const PureState& psi);

    double trace_real() const { return matrix.trace().real(); }

    Matrix matrix;
    ModeCutoff cutoff;
};

/// Applies exp(-i tau (a†b + b†a)), exponentiated exactly per total-photon-
/// number block. Preserves the norm and the per-total-number populations.
/// Throws std::invalid_argument when the input norm deviates from 1 by more
/// than 1e-6, std::domain_error for non-finite tau.
PureState evolve_unitary(const PureState& state, double tau);

/// Closed-form mode transform of the lossless coupler: the Heisenberg-picture
/// image of (a, b) after a dimensionless time tau is
///   [[cos tau, -i sin tau], [-i sin tau, cos tau]] * (a, b).
Eigen::Matrix2cd heisenberg_transform(double tau);

}  // namespace cwg::fock
