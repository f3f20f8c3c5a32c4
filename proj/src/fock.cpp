#include "cwg/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cwg::fock {

namespace {

const Complex kImag{0.0, 1.0};

}  // namespace

ModeCutoff::ModeCutoff(int n_max_) : n_max(n_max_) {
    if (n_max < 1) {
        throw std::domain_error("ModeCutoff: n_max must be >= 1, got " +
                                std::to_string(n_max));
    }
}

int basis_index(int n_a, int n_b, ModeCutoff cutoff) {
    if (n_a < 0 || n_a > cutoff.n_max || n_b < 0 || n_b > cutoff.n_max) {
        throw std::domain_error("basis_index: photon count (" + std::to_string(n_a) +
                                ", " + std::to_string(n_b) + ") outside [0, " +
                                std::to_string(cutoff.n_max) + "]");
    }
    return n_a * cutoff.per_mode() + n_b;
}

ModeOperator mode_operator(Mode mode, ModeCutoff cutoff) {
    const int p = cutoff.per_mode();
    Matrix m = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int n_a = 0; n_a <= cutoff.n_max; ++n_a) {
        for (int n_b = 0; n_b <= cutoff.n_max; ++n_b) {
            const int col = n_a * p + n_b;
            if (mode == Mode::a && n_a > 0) {
                m((n_a - 1) * p + n_b, col) = std::sqrt(double(n_a));
            }
            if (mode == Mode::b && n_b > 0) {
                m(n_a * p + (n_b - 1), col) = std::sqrt(double(n_b));
            }
        }
    }
    return ModeOperator{std::move(m), mode, cutoff};
}

Matrix coupler_hamiltonian(ModeCutoff cutoff) {
    const int p = cutoff.per_mode();
    Matrix h = Matrix::Zero(cutoff.dim(), cutoff.dim());
    // a†b: |n_a, n_b> -> sqrt((n_a+1) n_b) |n_a+1, n_b-1>, plus the adjoint.
    for (int n_a = 0; n_a <= cutoff.n_max; ++n_a) {
        for (int n_b = 0; n_b <= cutoff.n_max; ++n_b) {
            if (n_a + 1 <= cutoff.n_max && n_b - 1 >= 0) {
                const double t = std::sqrt(double(n_a + 1) * double(n_b));
                h((n_a + 1) * p + (n_b - 1), n_a * p + n_b) += t;
                h(n_a * p + n_b, (n_a + 1) * p + (n_b - 1)) += t;
            }
        }
    }
    return h;
}

PureState::PureState(Vector amplitudes_, ModeCutoff cutoff_)
    : amplitudes(std::move(amplitudes_)), cutoff(cutoff_) {
    if (amplitudes.size() != cutoff.dim()) {
        throw std::invalid_argument("PureState: amplitude vector has size " +
                                    std::to_string(amplitudes.size()) + ", basis needs " +
                                    std::to_string(cutoff.dim()));
    }
}

PureState PureState::basis_state(ModeCutoff cutoff, int n_a, int n_b) {
    Vector v = Vector::Zero(cutoff.dim());
    v(basis_index(n_a, n_b, cutoff)) = 1.0;
    return PureState(std::move(v), cutoff);
}

Complex PureState::amplitude(int n_a, int n_b) const {
    return amplitudes(basis_index(n_a, n_b, cutoff));
}

DensityOperator::DensityOperator(Matrix matrix_, ModeCutoff cutoff_)
    : matrix(std::move(matrix_)), cutoff(cutoff_) {
    if (matrix.rows() != cutoff.dim() || matrix.cols() != cutoff.dim()) {
        throw std::invalid_argument("DensityOperator: matrix is " +
                                    std::to_string(matrix.rows()) + "x" +
                                    std::to_string(matrix.cols()) + ", basis needs " +
                                    std::to_string(cutoff.dim()));
    }
    const double herm_dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-12) {
        throw std::invalid_argument("DensityOperator: not Hermitian, max deviation " +
                                    std::to_string(herm_dev));
    }
    const Complex tr = matrix.trace();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw std::invalid_argument("DensityOperator: trace deviates from 1 by " +
                                    std::to_string(std::abs(tr - 1.0)));
    }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    Matrix m = psi.amplitudes * psi.amplitudes.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityOperator(std::move(m), psi.cutoff);
}

PureState evolve_unitary(const PureState& state, double tau) {
    if (!std::isfinite(tau)) {
        throw std::domain_error("evolve_unitary: tau is not finite");
    }
    if (std::abs(state.norm() - 1.0) > 1e-6) {
        throw std::invalid_argument("evolve_unitary: input state norm deviates from 1 by " +
                                    std::to_string(std::abs(state.norm() - 1.0)));
    }

    const int n_max = state.cutoff.n_max;
    const int p = state.cutoff.per_mode();
    Vector out = Vector::Zero(state.cutoff.dim());

    // The Hamiltonian only couples states of equal total photon number, so
    // each total-number block is exponentiated on its own. Within the block
    // for total t, index by k = photons in mode a; the couplings are
    // <k+1, t-k-1| a†b |k, t-k> = sqrt((k+1)(t-k)).
    for (int total = 0; total <= 2 * n_max; ++total) {
        const int k_lo = std::max(0, total - n_max);
        const int k_hi = std::min(total, n_max);
        const int m = k_hi - k_lo + 1;

        Eigen::VectorXcd block(m);
        for (int k = k_lo; k <= k_hi; ++k) {
            block(k - k_lo) = state.amplitudes(k * p + (total - k));
        }
        if (m == 1) {
            out(k_lo * p + (total - k_lo)) = block(0);
            continue;
        }

        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
        for (int k = k_lo; k < k_hi; ++k) {
            const double t = std::sqrt(double(k + 1) * double(total - k));
            h(k - k_lo, k + 1 - k_lo) = t;
            h(k + 1 - k_lo, k - k_lo) = t;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        Eigen::VectorXcd phases(m);
        for (int i = 0; i < m; ++i) {
            phases(i) = std::exp(-kImag * tau * es.eigenvalues()(i));
        }
        const Eigen::MatrixXcd v = es.eigenvectors().cast<Complex>();
        Eigen::VectorXcd evolved = v * phases.cwiseProduct(v.adjoint() * block);
        for (int k = k_lo; k <= k_hi; ++k) {
            out(k * p + (total - k)) = evolved(k - k_lo);
        }
    }
    return PureState(std::move(out), state.cutoff);
}

Eigen::Matrix2cd heisenberg_transform(double tau) {
    if (!std::isfinite(tau)) {
        throw std::domain_error("heisenberg_transform: tau is not finite");
    }
    Eigen::Matrix2cd m;
    const Complex off = -kImag * std::sin(tau);
    m << std::cos(tau), off, off, std::cos(tau);
    return m;
}

}  // namespace cwg::fock
