#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qorrelate {

using Complex = std::complex<double>;

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxDenseQubits = 12;

// Unit-norm amplitude vector over n qubits. Qubit 1 is the most significant
// bit of the computational-basis index.
class PureState {
public:
    // Throws std::invalid_argument unless the length is 2^n with
    // kMinQubits <= n <= kMaxDenseQubits and the norm is 1 within 1e-12.
    static PureState from_amplitudes(std::vector<Complex> amplitudes);

    // Rescales to unit norm first; throws on a zero vector.
    static PureState normalized(std::vector<Complex> amplitudes);

    int qubits() const noexcept { return qubits_; }
    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

    bool operator==(const PureState&) const = default;

private:
    PureState(int qubits, std::vector<Complex> amplitudes)
        : qubits_(qubits), amplitudes_(std::move(amplitudes)) {}

    int qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

}  // namespace qorrelate
