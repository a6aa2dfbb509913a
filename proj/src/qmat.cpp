#include "tpc/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tpc/tolerances.hpp"

namespace tpc {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

Ket Ket::make(ComplexVector amplitudes) {
    if (amplitudes.size() == 0) throw std::invalid_argument("ket must have positive dimension");
    if (!amplitudes.allFinite()) throw std::invalid_argument("ket has non-finite amplitudes");
    if (std::abs(amplitudes.norm() - 1.0) > tolerances().trace)
        throw std::invalid_argument("ket is not normalized");
    return Ket(std::move(amplitudes));
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("basis index out of range");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return Ket(std::move(v));
}

DensityState DensityState::make(ComplexMatrix m, std::vector<std::size_t> dims) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw std::invalid_argument("density matrix must be square and nonempty");
    if (!all_finite(m)) throw std::invalid_argument("density matrix has non-finite entries");
    if (dims.empty() || std::find(dims.begin(), dims.end(), 0u) != dims.end() ||
        product(dims) != static_cast<std::size_t>(m.rows()))
        throw std::invalid_argument("subsystem dimensions do not match the matrix");
    const auto& tol = tolerances();
    if (!is_hermitian(m, tol.herm)) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > tol.trace)
        throw std::invalid_argument("density matrix does not have unit trace");
    if (min_eigenvalue(m) < -tol.psd)
        throw std::invalid_argument("density matrix is not positive semidefinite");
    return DensityState(std::move(m), std::move(dims));
}

DensityState DensityState::make(ComplexMatrix m) {
    const auto n = static_cast<std::size_t>(m.rows());
    return make(std::move(m), {n});
}

DensityState DensityState::pure(const Ket& k, std::vector<std::size_t> dims) {
    return make(k.projector(), std::move(dims));
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermiticity_defect(m) <= tol; }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DensityState partial_trace(const DensityState& state, std::span<const std::size_t> keep) {
    const auto& dims = state.dims();
    const std::size_t n = dims.size();
    if (keep.empty()) throw std::invalid_argument("partial trace must keep at least one subsystem");
    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) {
        if (k >= n) throw std::invalid_argument("subsystem index " + std::to_string(k) + " out of range");
        if (kept[k]) throw std::invalid_argument("subsystem index " + std::to_string(k) + " repeated");
        kept[k] = true;
    }

    // Row-major strides of the full index.
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t s = n - 1; s-- > 0;) stride[s] = stride[s + 1] * dims[s + 1];

    std::vector<std::size_t> kdims, tdims, kstride, tstride;
    for (std::size_t s = 0; s < n; ++s) {
        (kept[s] ? kdims : tdims).push_back(dims[s]);
        (kept[s] ? kstride : tstride).push_back(stride[s]);
    }
    const std::size_t kdim = product(kdims);
    const std::size_t tdim = product(tdims);

    // Offset into the full index for every kept (resp. traced) multi-index.
    auto offsets = [](const std::vector<std::size_t>& d, const std::vector<std::size_t>& st, std::size_t total) {
        std::vector<std::size_t> off(total, 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat, acc = 0;
            for (std::size_t s = d.size(); s-- > 0;) {
                acc += (rem % d[s]) * st[s];
                rem /= d[s];
            }
            off[flat] = acc;
        }
        return off;
    };
    const auto koff = offsets(kdims, kstride, kdim);
    const auto toff = offsets(tdims, tstride, tdim);

    const ComplexMatrix& rho = state.matrix();
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kdim), static_cast<Eigen::Index>(kdim));
    for (std::size_t r = 0; r < kdim; ++r)
        for (std::size_t c = 0; c < kdim; ++c) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < tdim; ++t)
                acc += rho(static_cast<Eigen::Index>(koff[r] + toff[t]), static_cast<Eigen::Index>(koff[c] + toff[t]));
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    return DensityState::make(std::move(out), kdims);
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
    if (!all_finite(m)) throw std::invalid_argument("matrix has non-finite entries");
    if (!is_hermitian(m, tolerances().herm)) throw std::invalid_argument("matrix is not Hermitian");
    // Symmetrize so the solver sees an exactly Hermitian input.
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
    // Eigen returns ascending order.
    EigenSystem es;
    es.values = solver.eigenvalues().reverse();
    es.vectors = solver.eigenvectors().rowwise().reverse();
    return es;
}

ComplexMatrix inv_sqrt_on_support(const ComplexMatrix& m) {
    const auto es = eig_hermitian(m);
    const auto& tol = tolerances();
    if (es.values.size() > 0 && es.values.minCoeff() < -tol.psd)
        throw std::invalid_argument("matrix is not positive semidefinite");
    const double cut = tol.rank * std::max(es.values.size() > 0 ? es.values.maxCoeff() : 0.0, 0.0);
    return apply_spectral(es, [cut](double v) { return v > cut ? 1.0 / std::sqrt(v) : 0.0; });
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
    const auto es = eig_hermitian(m);
    if (es.values.size() > 0 && es.values.minCoeff() < -tolerances().psd)
        throw std::invalid_argument("matrix is not positive semidefinite");
    return apply_spectral(es, [](double v) { return v > 0.0 ? std::sqrt(v) : 0.0; });
}

ComplexMatrix support_projector(const ComplexMatrix& m) {
    const auto es = eig_hermitian(m);
    const double cut = tolerances().rank * std::max(es.values.size() > 0 ? es.values.maxCoeff() : 0.0, 0.0);
    return apply_spectral(es, [cut](double v) { return v > cut ? 1.0 : 0.0; });
}

double trace_norm(const ComplexMatrix& m) {
    return eig_hermitian(m).values.cwiseAbs().sum();
}

double min_eigenvalue(const ComplexMatrix& m) {
    const auto es = eig_hermitian(m);
    return es.values.size() > 0 ? es.values.minCoeff() : 0.0;
}

bool is_psd(const ComplexMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

}  // namespace tpc
