#include "qorrelate/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qorrelate {

namespace {

void require_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxMatrixDim) {
        throw std::length_error("matrix dimension " + std::to_string(dim) + " outside [1, " +
                                std::to_string(kMaxMatrixDim) + "]");
    }
}

double eta(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Index helpers for a register whose factors are listed MSB first.
std::size_t bit_of(std::size_t position, std::size_t count) { return count - 1 - position; }

// Position of each label of `subset` inside `labels`; validates membership and uniqueness.
std::vector<std::size_t> positions_in(std::span<const Qubit> subset, const QubitList& labels,
                                      bool allow_empty) {
    if (subset.empty() && !allow_empty) {
        throw InvalidSubsetError("qubit subset is empty");
    }
    std::vector<std::size_t> positions;
    positions.reserve(subset.size());
    for (Qubit q : subset) {
        auto it = std::find(labels.begin(), labels.end(), q);
        if (it == labels.end()) {
            throw InvalidSubsetError("qubit " + std::to_string(q) + " is not in the register");
        }
        auto pos = static_cast<std::size_t>(it - labels.begin());
        if (std::find(positions.begin(), positions.end(), pos) != positions.end()) {
            throw InvalidSubsetError("qubit " + std::to_string(q) + " listed twice");
        }
        positions.push_back(pos);
    }
    return positions;
}

QubitList register_labels(int qubits) {
    QubitList labels(static_cast<std::size_t>(qubits));
    std::iota(labels.begin(), labels.end(), 1);
    return labels;
}

// Splits a full index into (kept index, environment index). Kept positions
// must be ascending so the kept factors keep their relative order.
struct IndexSplit {
    std::vector<std::size_t> kept_index;
    std::vector<std::size_t> env_index;
};

IndexSplit split_indices(std::size_t count, const std::vector<std::size_t>& kept_positions) {
    const std::size_t full = std::size_t{1} << count;
    std::vector<bool> is_kept(count, false);
    for (auto p : kept_positions) is_kept[p] = true;
    IndexSplit split{std::vector<std::size_t>(full), std::vector<std::size_t>(full)};
    for (std::size_t x = 0; x < full; ++x) {
        std::size_t k = 0;
        std::size_t e = 0;
        for (std::size_t pos = 0; pos < count; ++pos) {
            const std::size_t bit = (x >> bit_of(pos, count)) & 1U;
            if (is_kept[pos]) {
                k = (k << 1) | bit;
            } else {
                e = (e << 1) | bit;
            }
        }
        split.kept_index[x] = k;
        split.env_index[x] = e;
    }
    return split;
}

}  // namespace

// ---------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) { require_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    require_dim(dim);
    if (data_.size() != dim * dim) {
        throw std::invalid_argument("entry count does not match dim^2");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> vector) {
    ComplexMatrix m(vector.size());
    for (std::size_t i = 0; i < vector.size(); ++i) {
        m(i, i) = std::norm(vector[i]);
        for (std::size_t j = i + 1; j < vector.size(); ++j) {
            m(i, j) = vector[i] * std::conj(vector[j]);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const auto& z : data_) sum += std::norm(z);
    return std::sqrt(sum);
}

double ComplexMatrix::hermitian_deviation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch");
    const std::size_t n = lhs.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const std::size_t a = lhs.dim();
    const std::size_t b = rhs.dim();
    ComplexMatrix out(a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j)
            for (std::size_t k = 0; k < b; ++k)
                for (std::size_t l = 0; l < b; ++l) out(i * b + k, j * b + l) = lhs(i, j) * rhs(k, l);
    return out;
}

// ---------------------------------------------------------------- eigensolver

namespace {

// Jacobi sweeps on a hermitian copy. `vectors` may be null when only the
// spectrum is needed.
std::vector<double> jacobi(ComplexMatrix a, ComplexMatrix* vectors) {
    const std::size_t n = a.dim();
    const double scale = a.frobenius_norm();
    if (vectors) *vectors = ComplexMatrix::identity(n);
    if (scale == 0.0 || n == 1) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
        return values;
    }
    const double target = 1e-13 * scale;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) < target) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex phase = apq / mag;
                const Complex phase_c = std::conj(phase);

                // A <- A J with J = [[c, s], [-s conj(e), c conj(e)]] on (p, q).
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * phase_c * akq;
                    a(k, q) = s * akp + c * phase_c * akq;
                }
                // A <- J^H A
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                if (vectors) {
                    auto& v = *vectors;
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = c * vkp - s * phase_c * vkq;
                        v(k, q) = s * vkp + c * phase_c * vkq;
                    }
                }
            }
        }
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
    return values;
}

ComplexMatrix symmetrized_checked(const ComplexMatrix& m) {
    if (m.dim() == 0) throw std::invalid_argument("empty matrix");
    const double dev = m.hermitian_deviation();
    if (!(dev <= kHermitianTolerance)) {
        throw NotHermitianError("matrix deviates from hermitian by " + std::to_string(dev));
    }
    ComplexMatrix h(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        h(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
            h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    ComplexMatrix vectors;
    std::vector<double> values = jacobi(symmetrized_checked(m), &vectors);
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return values[l] < values[r]; });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = values[order[k]];
        for (std::size_t row = 0; row < n; ++row) out.vectors(row, k) = vectors(row, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigvals(const ComplexMatrix& m) {
    std::vector<double> values = jacobi(symmetrized_checked(m), nullptr);
    std::sort(values.begin(), values.end());
    return values;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    const HermitianEigen eig = hermitian_eigen(m);
    const std::size_t n = eig.values.size();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = eig.values[k];
        if (v < -kEigenvalueFloor) {
            throw InvalidDensityMatrixError("matrix has negative eigenvalue " + std::to_string(v));
        }
        roots[k] = std::sqrt(std::max(v, 0.0));
    }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += eig.vectors(i, k) * roots[k] * std::conj(eig.vectors(j, k));
            out(i, j) = sum;
            out(j, i) = std::conj(sum);
        }
    for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
    return out;
}

double trace_norm_hermitian(const ComplexMatrix& m) {
    double total = 0.0;
    for (double v : hermitian_eigvals(m)) total += std::abs(v);
    return total;
}

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix, QubitList qubits)
    : matrix_(std::move(matrix)), qubits_(std::move(qubits)) {
    if (qubits_.empty() || qubits_.size() > 7 || matrix_.dim() != (std::size_t{1} << qubits_.size())) {
        throw InvalidSubsetError("density matrix dimension does not match its qubit list");
    }
    QubitList sorted = qubits_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 1) {
        throw InvalidSubsetError("density matrix qubit labels must be distinct and positive");
    }
    const double trace_error = std::abs(matrix_.trace() - Complex{1.0});
    if (!(trace_error <= kTraceTolerance)) {
        throw InvalidDensityMatrixError("trace differs from 1 by " + std::to_string(trace_error));
    }
    eigenvalues_ = hermitian_eigvals(matrix_);
    if (eigenvalues_.front() < -kEigenvalueFloor) {
        throw InvalidDensityMatrixError("negative eigenvalue " + std::to_string(eigenvalues_.front()));
    }
    for (auto& v : eigenvalues_) v = std::clamp(v, 0.0, 1.0);
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    if (psi.dim() > kMaxMatrixDim) {
        throw std::length_error("pure state too large for a dense density matrix");
    }
    // Rank-one projector of a unit vector: spectrum {0, ..., 0, 1}.
    std::vector<double> spectrum(psi.dim(), 0.0);
    spectrum.back() = 1.0;
    return DensityMatrix(KnownSpectrum{}, ComplexMatrix::projector(psi.amplitudes()),
                         register_labels(psi.qubits()), std::move(spectrum));
}

// ---------------------------------------------------------------- subsystem maps

DensityMatrix partial_trace(const PureState& psi, std::span<const Qubit> keep) {
    const QubitList labels = register_labels(psi.qubits());
    std::vector<std::size_t> kept = positions_in(keep, labels, false);
    std::sort(kept.begin(), kept.end());
    const auto count = static_cast<std::size_t>(psi.qubits());
    const IndexSplit split = split_indices(count, kept);

    const std::size_t kept_dim = std::size_t{1} << kept.size();
    const std::size_t env_dim = psi.dim() / kept_dim;
    // Psi(k, e) as a kept_dim x env_dim block; rho = Psi Psi^H.
    std::vector<Complex> block(psi.dim());
    const auto amps = psi.amplitudes();
    for (std::size_t x = 0; x < psi.dim(); ++x) block[split.kept_index[x] * env_dim + split.env_index[x]] = amps[x];

    ComplexMatrix rho(kept_dim);
    for (std::size_t i = 0; i < kept_dim; ++i) {
        for (std::size_t j = i; j < kept_dim; ++j) {
            Complex sum = 0.0;
            const Complex* ri = &block[i * env_dim];
            const Complex* rj = &block[j * env_dim];
            for (std::size_t e = 0; e < env_dim; ++e) sum += ri[e] * std::conj(rj[e]);
            rho(i, j) = sum;
            rho(j, i) = std::conj(sum);
        }
        rho(i, i) = rho(i, i).real();
    }
    QubitList out_labels;
    for (auto p : kept) out_labels.push_back(labels[p]);
    return DensityMatrix(std::move(rho), std::move(out_labels));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Qubit> keep) {
    const QubitList& labels = rho.qubits();
    std::vector<std::size_t> kept = positions_in(keep, labels, false);
    std::sort(kept.begin(), kept.end());
    const std::size_t count = labels.size();
    const IndexSplit split = split_indices(count, kept);
    const std::size_t kept_dim = std::size_t{1} << kept.size();

    ComplexMatrix out(kept_dim);
    const std::size_t full = rho.dim();
    for (std::size_t x = 0; x < full; ++x) {
        for (std::size_t y = 0; y < full; ++y) {
            if (split.env_index[x] != split.env_index[y]) continue;
            out(split.kept_index[x], split.kept_index[y]) += rho.matrix()(x, y);
        }
    }
    for (std::size_t i = 0; i < kept_dim; ++i) {
        out(i, i) = out(i, i).real();
        for (std::size_t j = i + 1; j < kept_dim; ++j) {
            const Complex avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = avg;
            out(j, i) = std::conj(avg);
        }
    }
    QubitList out_labels;
    for (auto p : kept) out_labels.push_back(labels[p]);
    return DensityMatrix(std::move(out), std::move(out_labels));
}

DensityMatrix reorder(const DensityMatrix& rho, std::span<const Qubit> order) {
    const QubitList& labels = rho.qubits();
    if (order.size() != labels.size()) throw InvalidSubsetError("reorder needs a full permutation");
    const std::vector<std::size_t> source = positions_in(order, labels, false);
    const std::size_t count = labels.size();
    const std::size_t dim = rho.dim();
    // new index bit at position k comes from old position source[k]
    std::vector<std::size_t> map(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t y = 0;
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t bit = (x >> bit_of(source[k], count)) & 1U;
            y |= bit << bit_of(k, count);
        }
        map[x] = y;
    }
    ComplexMatrix out(dim);
    for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) out(map[x], map[y]) = rho.matrix()(x, y);
    return DensityMatrix(std::move(out), QubitList(order.begin(), order.end()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const Qubit> labels,
                                std::span<const Qubit> part) {
    const QubitList label_list(labels.begin(), labels.end());
    const std::size_t count = label_list.size();
    if (m.dim() != (std::size_t{1} << count)) {
        throw InvalidSubsetError("operator dimension does not match its qubit labels");
    }
    const std::vector<std::size_t> positions = positions_in(part, label_list, true);
    std::size_t mask = 0;
    for (auto p : positions) mask |= std::size_t{1} << bit_of(p, count);

    const std::size_t dim = m.dim();
    ComplexMatrix out(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            // swap the masked bits between row and column index
            const std::size_t nx = (x & ~mask) | (y & mask);
            const std::size_t ny = (y & ~mask) | (x & mask);
            out(nx, ny) = m(x, y);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const Qubit> part) {
    return partial_transpose(rho.matrix(), rho.qubits(), part);
}

// ---------------------------------------------------------------- entropies

double binary_entropy(double x) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
        throw std::domain_error("binary_entropy argument " + std::to_string(x) + " outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    return eta(x) + eta(1.0 - x);
}

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) h += eta(std::clamp(p, 0.0, 1.0));
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(rho.eigenvalues()); }

}  // namespace qorrelate
