#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qorrelate/errors.hpp"
#include "qorrelate/pure_state.hpp"

namespace qorrelate {

inline constexpr std::size_t kMaxMatrixDim = 128;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
// Eigenvalues in [-kEigenvalueFloor, 0) are roundoff and clamp to zero.
inline constexpr double kEigenvalueFloor = 1e-9;

// 1-based qubit label; label 1 is the most significant index bit.
using Qubit = int;
using QubitList = std::vector<Qubit>;

// Dense square complex matrix, row-major, dim <= kMaxMatrixDim.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix projector(std::span<const Complex> vector);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }
    std::span<const Complex> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;
    double frobenius_norm() const;
    // max |m_ij - conj(m_ji)|
    double hermitian_deviation() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

// Hermitian, unit-trace, positive semidefinite matrix over an ordered list of
// qubit labels. The first label is the most significant bit of the row index.
class DensityMatrix {
public:
    // Throws NotHermitianError / InvalidDensityMatrixError / InvalidSubsetError.
    DensityMatrix(ComplexMatrix matrix, QubitList qubits);

    static DensityMatrix from_pure(const PureState& psi);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const QubitList& qubits() const noexcept { return qubits_; }
    std::size_t dim() const noexcept { return matrix_.dim(); }
    // Ascending, clamped to [0, 1].
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

private:
    struct KnownSpectrum {};
    DensityMatrix(KnownSpectrum, ComplexMatrix matrix, QubitList qubits, std::vector<double> eigenvalues)
        : matrix_(std::move(matrix)), qubits_(std::move(qubits)), eigenvalues_(std::move(eigenvalues)) {}

    ComplexMatrix matrix_;
    QubitList qubits_;
    std::vector<double> eigenvalues_;
};

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

// Cyclic complex Jacobi. Throws NotHermitianError past kHermitianTolerance.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigvals(const ComplexMatrix& m);

// Throws InvalidDensityMatrixError if an eigenvalue is below -kEigenvalueFloor.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

double trace_norm_hermitian(const ComplexMatrix& m);

// keep must be a nonempty subset of the register; output follows ascending labels.
DensityMatrix partial_trace(const PureState& psi, std::span<const Qubit> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Qubit> keep);

// Relabels the tensor factors so that they appear in `order` (a permutation
// of rho.qubits()).
DensityMatrix reorder(const DensityMatrix& rho, std::span<const Qubit> order);

// Transposes the tensor factors named in `part`. Involution, bit-exact.
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const Qubit> part);
// Same map on a bare operator whose factors carry `labels`.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const Qubit> labels,
                                std::span<const Qubit> part);

// 0 log 0 := 0; results in bits.
double binary_entropy(double x);
double shannon_entropy(std::span<const double> probabilities);
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace qorrelate
