// gaussian.hpp — covariance matrices of the four squeezed-light scenarios,
// symplectic spectra of the partial transpose, and Gaussian log negativity.

#pragma once

#include "cwg/negativity.hpp"

#include <Eigen/Dense>

namespace cwg::gaussian {

/// 4x4 real symmetric matrix of symmetrized quadrature second moments in the
/// ordering (x1, p1, x2, p2), with x = (a + a†)/sqrt(2), p = (a - a†)/(i sqrt(2)).
/// Vacuum is diag(1/2, 1/2, 1/2, 1/2). The constructor enforces symmetry
/// within 1e-12 and stores the exactly symmetrized matrix.
class CovarianceMatrix {
  public:
    explicit CovarianceMatrix(const Eigen::Matrix4d& m);

    static CovarianceMatrix vacuum();

    const Eigen::Matrix4d& matrix() const { return m_; }
    Eigen::Matrix2d mode_a_block() const { return m_.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d mode_b_block() const { return m_.bottomRightCorner<2, 2>(); }
    Eigen::Matrix2d cross_block() const { return m_.topRightCorner<2, 2>(); }

  private:
    Eigen::Matrix4d m_;
};

/// Symplectic eigenvalue pair, sorted so nu_plus >= nu_minus.
struct SymplecticPair {
    double nu_plus;
    double nu_minus;
};

/// Symplectic eigenvalues of the partially transposed state:
///   delta = det(A) + det(B) - 2 det(C),
///   nu±^2 = (delta ± sqrt(delta^2 - 4 det sigma)) / 2,
/// with A, B the single-mode blocks and C the cross block. Throws
/// std::domain_error when the discriminant (or a squared eigenvalue) is
/// negative beyond -1e-10, which signals an unphysical input.
SymplecticPair ppt_symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Symplectic eigenvalues of sigma itself (delta uses +2 det C). A physical
/// state has both >= 1/2.
SymplecticPair state_symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Physicality witness: sigma describes a quantum state iff the Hermitian
/// matrix sigma + (i/2) Omega is positive semidefinite, equivalent to both
/// symplectic eigenvalues being >= 1/2. Unlike the discriminant route above,
/// this check stays accurate where the symplectic spectrum degenerates
/// (every pure state), so it carries the tight tolerance.
bool is_physical_state(const CovarianceMatrix& sigma, double tolerance = 1e-10);

/// E_N = max(0, -log_base(2 nu_min)). Natural log by default, so maxima of
/// the squeezed scenarios equal 2r in nats.
double log_negativity_gaussian(const CovarianceMatrix& sigma,
                               negativity::LogBase base = negativity::LogBase::e);

/// Selects between two parameterizations of the lossy separable-state
/// covariance: `consistent` (default) reduces exactly to the lossless form
/// at zero loss; `paper_exact` preserves a variant that differs from it by
/// sinh^2(r)/2 on the diagonal at zero loss and can leave the physical
/// domain for small loss times.
enum class FormulaMode { consistent, paper_exact };

enum class Scenario { sep_lossless, ent_lossless, sep_lossy, ent_lossy };

struct GaussianScenarioParams {
    double r = 0.0;           // squeezing, real
    double tau = 0.0;         // dimensionless time Jt
    double loss_ratio = 0.0;  // gamma / J
    FormulaMode formula_mode = FormulaMode::consistent;
};

/// Two single-mode squeezed vacua coupled at tau (lossless):
///   A = B = diag(c, d),  C = antidiag(e, e),
///   c,d = {cosh 2r ± sinh 2r cos 2 tau}/2,  e = -sinh 2r sin(2 tau)/2.
CovarianceMatrix cov_separable_squeezed(double r, double tau);

/// Two-mode squeezed vacuum coupled at tau (lossless):
///   f = cosh(2r)/2,  g = -sinh 2r sin(2 tau)/2,  h = sinh 2r cos(2 tau)/2,
///   A = B = [[f, g], [g, f]],  C = diag(h, -h).
CovarianceMatrix cov_entangled_squeezed(double r, double tau);

/// Lossy separable scenario with gt = loss_ratio * tau; see FormulaMode for
/// the two parameterizations. Throws std::domain_error for loss_ratio < 0.
CovarianceMatrix cov_separable_squeezed_lossy(double r, double tau, double loss_ratio,
                                              FormulaMode mode = FormulaMode::consistent);

/// Lossy entangled scenario:
///   f' = 1/2 + e^{-2gt} sinh^2 r,  g' = -e^{-2gt} sinh 2r sin(2 tau)/2,
///   h' = e^{-2gt} sinh 2r cos(2 tau)/2.
CovarianceMatrix cov_entangled_squeezed_lossy(double r, double tau, double loss_ratio);

/// Per-scenario closed forms for the PPT symplectic pair:
///   sep lossless: sqrt(c d) ± e         ent lossless: sqrt((f+g)(f-g)) ± h
///   sep lossy:    sqrt(c' d') ± e'      ent lossy:    sqrt(m+ m-)/2 ± h'
/// with m± = 1 - e^{-2gt} [1 - {cosh 2r ± sinh 2r sin 2 tau}]. The ent-lossy
/// form carries a 1/2 normalization so its zero-loss limit matches the
/// lossless closed form.
SymplecticPair closed_form_nu(Scenario scenario, const GaussianScenarioParams& params);

}  // namespace cwg::gaussian
