// lindblad.hpp — brute-force integrator for the full open-system dynamics on
// the truncated Fock space, squeezed-state constructors, and covariance
// extraction from density operators. This module is the independent oracle
// the closed forms are tested against.

#pragma once

#include "cwg/fock.hpp"
#include "cwg/gaussian.hpp"

#include <stdexcept>

namespace cwg::lindblad {

/// Raised when the step-halving convergence check fails or a post-condition
/// of the integrator (trace, positivity) is violated.
class accuracy_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a requested cutoff leaves more than the allowed population
/// outside the truncated basis.
class truncation_error : public std::runtime_error {
  public:
    truncation_error(const std::string& what, int required_n_max)
        : std::runtime_error(what), required_n_max_(required_n_max) {}

    int required_n_max() const { return required_n_max_; }

  private:
    int required_n_max_;
};

/// Classical fixed-step 4th-order integrator. Every call integrates twice,
/// at `step` and `step/2`, and fails with accuracy_error unless the final
/// states agree in trace distance within trace_tolerance.
struct IntegratorConfig {
    double step = 0.0;              // <= 0 selects min(1e-3, 1e-2 / (1 + loss_ratio))
    double trace_tolerance = 1e-6;  // convergence and trace-drift budget
};

/// Right-hand side of the dimensionless master equation,
///   d rho / d tau = -i [a†b + b†a, rho]
///                   + (gamma/J) sum_{c in {a,b}} (2 c rho c† - c†c rho - rho c†c).
/// The dissipator is normalized so single-photon populations decay as
/// exp(-2 gamma t). Trace-free for any input.
Eigen::MatrixXcd liouvillian_rhs(const fock::DensityOperator& rho, double loss_ratio);

/// Propagates rho0 to tau_end. Trace is preserved within trace_tolerance,
/// Hermiticity is enforced by symmetrization every step, and the returned
/// state has min eigenvalue >= -10 * trace_tolerance.
fock::DensityOperator integrate_master_equation(const fock::DensityOperator& rho0,
                                                double tau_end, double loss_ratio,
                                                const IntegratorConfig& config = {});

/// Default cutoff for squeezed inputs: the smallest n_max that satisfies the
/// 1e-10 tail rule of both constructors below, and never less than the
/// ceil(8 + 20 sinh^2 r) floor.
int default_squeezed_cutoff(double r);

/// Product of two single-mode squeezed vacua exp[(r/2)(c†^2 - c^2)]|0>, one
/// per mode, truncated at the cutoff. Per-mode amplitudes live on even
/// photon numbers: c_{2m} ∝ (tanh r)^m sqrt((2m)!)/(2^m m!); this sign
/// convention stretches x and squeezes p for r > 0. Throws truncation_error
/// (reporting the required n_max) when the neglected population of the
/// untruncated state exceeds 1e-10.
fock::PureState single_mode_squeezed_fock(double r, fock::ModeCutoff cutoff);

/// Two-mode squeezed vacuum exp[r(a†b† - ab)]|00>, amplitudes
/// (tanh r)^n / cosh r on |n,n>. Same tail rule as above.
fock::PureState two_mode_squeezed_fock(double r, fock::ModeCutoff cutoff);

/// Symmetrized quadrature second moments of rho assembled in the
/// (x1, p1, x2, p2) ordering. First moments must vanish (|<u>| < 1e-8,
/// std::invalid_argument otherwise): all scenarios here are zero-mean.
gaussian::CovarianceMatrix covariance_from_density(const fock::DensityOperator& rho);

}  // namespace cwg::lindblad
