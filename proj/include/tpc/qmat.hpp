#pragma once

// Dense complex linear algebra for the small Hilbert spaces that arise when a
// two-party box is fed a superposed input: Kronecker products, partial traces,
// Hermitian spectra and the operator functions built on them.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tpc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Unit-norm state vector.
class Ket {
public:
    // Throws std::invalid_argument unless the norm is 1 within TOL_TRACE.
    static Ket make(ComplexVector amplitudes);
    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const ComplexVector& amplitudes() const { return amps_; }
    ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

private:
    explicit Ket(ComplexVector a) : amps_(std::move(a)) {}
    ComplexVector amps_;
};

// Hermitian, unit-trace, positive semidefinite operator together with the
// dimensions of the subsystems it lives on (first subsystem most significant).
class DensityState {
public:
    // Validates against TOL_HERM, TOL_TRACE and TOL_PSD; throws
    // std::invalid_argument on violation.
    static DensityState make(ComplexMatrix m, std::vector<std::size_t> dims);
    static DensityState make(ComplexMatrix m);
    static DensityState pure(const Ket& k, std::vector<std::size_t> dims);

    const ComplexMatrix& matrix() const { return m_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

private:
    DensityState(ComplexMatrix m, std::vector<std::size_t> d) : m_(std::move(m)), dims_(std::move(d)) {}
    ComplexMatrix m_;
    std::vector<std::size_t> dims_;
};

struct EigenSystem {
    RealVector values;      // descending
    ComplexMatrix vectors;  // columns match values
};

bool all_finite(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Traces out every subsystem not listed in `keep`. Kept subsystems stay in
// ascending index order. Throws std::invalid_argument on a bad index.
DensityState partial_trace(const DensityState& state, std::span<const std::size_t> keep);

// Throws std::invalid_argument if `m` is not Hermitian within TOL_HERM.
EigenSystem eig_hermitian(const ComplexMatrix& m);

// Applies `fn` to the spectrum of a Hermitian matrix.
template <class Fn>
ComplexMatrix apply_spectral(const EigenSystem& es, Fn fn) {
    RealVector mapped(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) mapped(i) = fn(es.values(i));
    return es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

// Pseudo-inverse square root on the support: eigenvalues above
// RANK_TOL * lambda_max go to lambda^{-1/2}, the rest to 0. Throws if an
// eigenvalue is below -TOL_PSD.
ComplexMatrix inv_sqrt_on_support(const ComplexMatrix& m);

// Principal square root of a PSD matrix (negative rounding clipped to 0).
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

// Projector onto the span of eigenvectors with eigenvalue above the rank cut.
ComplexMatrix support_projector(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

bool is_psd(const ComplexMatrix& m, double tol);
double min_eigenvalue(const ComplexMatrix& m);

}  // namespace tpc
