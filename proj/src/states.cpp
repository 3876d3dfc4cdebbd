#include "qorrelate/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qorrelate/rng.hpp"

namespace qorrelate {

// ---------------------------------------------------------------- PureState

namespace {

int qubits_for_length(std::size_t length) {
    if (length == 0 || !std::has_single_bit(length)) {
        throw std::invalid_argument("amplitude count " + std::to_string(length) + " is not a power of two");
    }
    const int n = std::countr_zero(length);
    if (n < kMinQubits || n > kMaxDenseQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [" +
                                    std::to_string(kMinQubits) + ", " + std::to_string(kMaxDenseQubits) + "]");
    }
    return n;
}

double norm_of(const std::vector<Complex>& v) {
    double sum = 0.0;
    for (const auto& z : v) sum += std::norm(z);
    return std::sqrt(sum);
}

void require_qubits(int n) {
    if (n < kMinQubits || n > kMaxDenseQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [" +
                                    std::to_string(kMinQubits) + ", " + std::to_string(kMaxDenseQubits) + "]");
    }
}

void require_excitations(int n, int r, int lo, int hi) {
    if (r < lo || r > hi) {
        throw std::out_of_range("excitation count r=" + std::to_string(r) + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "] for n=" + std::to_string(n));
    }
}

std::vector<Complex> normalize(std::vector<Complex> v) {
    const double norm = norm_of(v);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("cannot normalize a zero vector");
    for (auto& z : v) z /= norm;
    return v;
}

std::vector<Complex> gaussian_vector(std::size_t length, GaussianSource& source) {
    std::vector<Complex> v(length);
    for (auto& z : v) z = source.next_complex();
    return v;
}

// Normalized |D_n^r> amplitudes scaled by `weight`, accumulated into `out`.
void add_dicke(std::vector<Complex>& out, int r, Complex weight) {
    std::size_t count = 0;
    for (std::size_t x = 0; x < out.size(); ++x)
        if (std::popcount(x) == r) ++count;
    const Complex amp = weight / std::sqrt(static_cast<double>(count));
    for (std::size_t x = 0; x < out.size(); ++x)
        if (std::popcount(x) == r) out[x] += amp;
}

}  // namespace

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
    const int n = qubits_for_length(amplitudes.size());
    const double norm = norm_of(amplitudes);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
        throw std::invalid_argument("amplitude vector norm " + std::to_string(norm) + " differs from 1");
    }
    return PureState(n, std::move(amplitudes));
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
    const int n = qubits_for_length(amplitudes.size());
    return PureState(n, normalize(std::move(amplitudes)));
}

// ---------------------------------------------------------------- families

PureState haar_random_pure(int n, std::uint64_t seed) {
    require_qubits(n);
    GaussianSource source(seed);
    return PureState::normalized(gaussian_vector(std::size_t{1} << n, source));
}

PureState w_state(int n) { return dicke_state(n, 1); }

PureState ghz_state(int n) {
    require_qubits(n);
    std::vector<Complex> v(std::size_t{1} << n);
    v.front() = v.back() = 1.0 / std::sqrt(2.0);
    return PureState::normalized(std::move(v));
}

PureState dicke_state(int n, int r) {
    require_qubits(n);
    require_excitations(n, r, 0, n);
    std::vector<Complex> v(std::size_t{1} << n);
    add_dicke(v, r, 1.0);
    return PureState::normalized(std::move(v));
}

PureState generalized_dicke_random(int n, int r, std::uint64_t seed) {
    require_qubits(n);
    require_excitations(n, r, 1, n - 1);
    GaussianSource source(seed);
    std::vector<Complex> v(std::size_t{1} << n);
    // coefficients are drawn in ascending basis-index order
    for (std::size_t x = 0; x < v.size(); ++x)
        if (std::popcount(x) == r) v[x] = source.next_complex();
    return PureState::normalized(std::move(v));
}

PureState symmetric_random(int n, std::uint64_t seed) {
    require_qubits(n);
    GaussianSource source(seed);
    const std::vector<Complex> coefficients = gaussian_vector(static_cast<std::size_t>(n) + 1, source);
    std::vector<Complex> v(std::size_t{1} << n);
    for (int r = 0; r <= n; ++r) add_dicke(v, r, coefficients[static_cast<std::size_t>(r)]);
    return PureState::normalized(std::move(v));
}

// ---------------------------------------------------------------- Dicke marginals

DickePopulations dicke_populations(int n, int r) {
    if (n < 2) throw std::invalid_argument("Dicke marginals need n >= 2");
    require_excitations(n, r, 0, n);
    const double nn = n;
    const double rr = r;
    const double denom = nn * (nn - 1.0);
    return {(nn - rr) * (nn - rr - 1.0) / denom, rr * (nn - rr) / denom, rr * (rr - 1.0) / denom};
}

DensityMatrix dicke_pair_rdm(int n, int r) {
    const auto [a, b, c] = dicke_populations(n, r);
    ComplexMatrix m(4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = b;
    m(1, 2) = b;
    m(2, 1) = b;
    m(3, 3) = c;
    return DensityMatrix(std::move(m), {1, 2});
}

DensityMatrix dicke_single_rdm(int n, int r) {
    if (n < 2) throw std::invalid_argument("Dicke marginals need n >= 2");
    require_excitations(n, r, 0, n);
    const double p1 = static_cast<double>(r) / n;
    const double diag[] = {1.0 - p1, p1};
    return DensityMatrix(ComplexMatrix::diagonal(diag), {1});
}

// ---------------------------------------------------------------- ensembles

std::string_view family_name(Family family) {
    switch (family) {
        case Family::Haar: return "haar";
        case Family::W: return "w";
        case Family::Dicke: return "dicke";
        case Family::GeneralizedDicke: return "gen-dicke";
        case Family::Symmetric: return "symmetric";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    for (Family f : {Family::Haar, Family::W, Family::Dicke, Family::GeneralizedDicke, Family::Symmetric})
        if (family_name(f) == name) return f;
    if (name == "generalized-dicke" || name == "generalized_dicke") return Family::GeneralizedDicke;
    return std::nullopt;
}

void EnsembleSpec::validate() const {
    require_qubits(n);
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    switch (family) {
        case Family::Dicke: require_excitations(n, r, 0, n); break;
        case Family::GeneralizedDicke: require_excitations(n, r, 1, n - 1); break;
        default: break;
    }
}

PureState sample_state(const EnsembleSpec& spec, std::uint64_t index) {
    const std::uint64_t seed = sample_seed(spec.master_seed, index);
    switch (spec.family) {
        case Family::Haar: return haar_random_pure(spec.n, seed);
        case Family::W: return w_state(spec.n);
        case Family::Dicke: return dicke_state(spec.n, spec.r);
        case Family::GeneralizedDicke: return generalized_dicke_random(spec.n, spec.r, seed);
        case Family::Symmetric: return symmetric_random(spec.n, seed);
    }
    throw std::invalid_argument("unknown ensemble family");
}

}  // namespace qorrelate
