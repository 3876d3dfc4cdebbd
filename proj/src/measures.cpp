#include "qorrelate/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qorrelate {

namespace {

double eta(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

void require_two_qubits(const DensityMatrix& rho) {
    if (rho.qubits().size() != 2) {
        throw std::invalid_argument("two-qubit state required, got " + std::to_string(rho.qubits().size()) +
                                    " qubits");
    }
}

// 2x2 hermitian [[d0, off], [conj(off), d1]]
struct Hermitian2 {
    double d0 = 0.0;
    double d1 = 0.0;
    Complex off = 0.0;

    std::array<double, 2> eigenvalues() const {
        const double mean = 0.5 * (d0 + d1);
        const double half_gap = 0.5 * std::sqrt((d0 - d1) * (d0 - d1) + 4.0 * std::norm(off));
        return {mean - half_gap, mean + half_gap};
    }
    double entropy() const {
        const auto ev = eigenvalues();
        return eta(std::clamp(ev[0], 0.0, 1.0)) + eta(std::clamp(ev[1], 0.0, 1.0));
    }
};

// Conditional-state model of a two-qubit state measured on one side. For a
// projector (I + s n.sigma)/2 on the measured qubit, the unnormalized state of
// the other qubit is (marginal + s sum_k n_k pauli_k)/2, where pauli_k is the
// partial trace of (sigma_k on the measured qubit) rho.
class OneWayModel {
public:
    struct Value {
        double conditional;  // sum_i p_i S(rho_{U|i})
        double dephased;     // S(sum_i P_i rho P_i)
    };

    OneWayModel(const DensityMatrix& rho, Direction dir) {
        require_two_qubits(rho);
        const ComplexMatrix& m = rho.matrix();
        const bool measure_second = dir == Direction::OnSecond;
        // element of rho with unmeasured index u, measured index v
        auto at = [&](int u, int v, int up, int vp) -> Complex {
            return measure_second ? m(2 * u + v, 2 * up + vp) : m(2 * v + u, 2 * vp + up);
        };
        const Complex sigma[3][2][2] = {
            {{0.0, 1.0}, {1.0, 0.0}},
            {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}},
            {{1.0, 0.0}, {0.0, -1.0}},
        };
        auto reduce = [&](auto weight) {
            Complex block[2][2] = {};
            for (int u = 0; u < 2; ++u)
                for (int up = 0; up < 2; ++up)
                    for (int v = 0; v < 2; ++v)
                        for (int vp = 0; vp < 2; ++vp) block[u][up] += at(u, v, up, vp) * weight(vp, v);
            return Hermitian2{block[0][0].real(), block[1][1].real(), 0.5 * (block[0][1] + std::conj(block[1][0]))};
        };
        unmeasured_ = reduce([](int vp, int v) { return vp == v ? Complex{1.0} : Complex{}; });
        for (int k = 0; k < 3; ++k) pauli_[k] = reduce([&](int vp, int v) { return sigma[k][vp][v]; });

        Complex measured_block[2][2] = {};
        for (int v = 0; v < 2; ++v)
            for (int vp = 0; vp < 2; ++vp)
                for (int u = 0; u < 2; ++u) measured_block[v][vp] += at(u, v, u, vp);
        measured_ = Hermitian2{measured_block[0][0].real(), measured_block[1][1].real(),
                               0.5 * (measured_block[0][1] + std::conj(measured_block[1][0]))};
    }

    Value evaluate(const std::array<double, 3>& n) const {
        Value value{0.0, 0.0};
        for (double sign : {1.0, -1.0}) {
            Hermitian2 branch;
            branch.d0 = 0.5 * (unmeasured_.d0 + sign * (n[0] * pauli_[0].d0 + n[1] * pauli_[1].d0 + n[2] * pauli_[2].d0));
            branch.d1 = 0.5 * (unmeasured_.d1 + sign * (n[0] * pauli_[0].d1 + n[1] * pauli_[1].d1 + n[2] * pauli_[2].d1));
            branch.off =
                0.5 * (unmeasured_.off + sign * (n[0] * pauli_[0].off + n[1] * pauli_[1].off + n[2] * pauli_[2].off));
            const double p = branch.d0 + branch.d1;
            if (p < 1e-12) continue;
            const auto mu = branch.eigenvalues();
            const double spectral = eta(std::max(mu[0], 0.0)) + eta(std::max(mu[1], 0.0));
            value.dephased += spectral;
            value.conditional += spectral - eta(p);
        }
        return value;
    }

    const Hermitian2& unmeasured_marginal() const { return unmeasured_; }
    const Hermitian2& measured_marginal() const { return measured_; }

private:
    Hermitian2 unmeasured_;
    Hermitian2 measured_;
    std::array<Hermitian2, 3> pauli_;
};

std::array<double, 3> bloch_axis(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct Minimum {
    double value;
    double theta;
    double phi;
};

template <typename Objective>
Minimum pattern_search(const Objective& f, Minimum start, double theta_step, double phi_step, double min_step) {
    Minimum best = start;
    while (std::max(theta_step, phi_step) >= min_step) {
        const double candidates[4][2] = {
            {best.theta + theta_step, best.phi},
            {best.theta - theta_step, best.phi},
            {best.theta, best.phi + phi_step},
            {best.theta, best.phi - phi_step},
        };
        Minimum trial = best;
        for (const auto& c : candidates) {
            const double v = f(c[0], c[1]);
            if (v < trial.value) trial = {v, c[0], c[1]};
        }
        if (trial.value < best.value) {
            best = trial;
        } else {
            theta_step *= 0.5;
            phi_step *= 0.5;
        }
    }
    return best;
}

MeasurementBasis canonical_basis(double theta, double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    // fold theta into [0, pi] using the Bloch-sphere symmetry (theta, phi) ~ (-theta, phi + pi)
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    if (theta > std::numbers::pi) {
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return {theta, phi};
}

void validate(const OptimizerOptions& options) {
    if (options.theta_steps < 2 || options.phi_steps < 1 || options.starts < 1 || !(options.min_step > 0.0)) {
        throw std::invalid_argument("optimizer options out of range");
    }
}

}  // namespace

// ---------------------------------------------------------------- MeasureKind

std::string_view measure_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Concurrence: return "c";
        case MeasureKind::ConcurrenceSq: return "c2";
        case MeasureKind::Eof: return "e";
        case MeasureKind::EofSq: return "e2";
        case MeasureKind::Negativity: return "n";
        case MeasureKind::NegativitySq: return "n2";
        case MeasureKind::LogNegativity: return "ln";
        case MeasureKind::LogNegativitySq: return "ln2";
        case MeasureKind::DiscordFwd: return "d-fwd";
        case MeasureKind::DiscordBwd: return "d-bwd";
        case MeasureKind::DiscordSqFwd: return "d2-fwd";
        case MeasureKind::DiscordSqBwd: return "d2-bwd";
        case MeasureKind::DeficitFwd: return "wd-fwd";
        case MeasureKind::DeficitBwd: return "wd-bwd";
        case MeasureKind::DeficitSqFwd: return "wd2-fwd";
        case MeasureKind::DeficitSqBwd: return "wd2-bwd";
    }
    return "unknown";
}

std::optional<MeasureKind> parse_measure(std::string_view name) {
    for (MeasureKind k : kAllMeasureKinds)
        if (measure_name(k) == name) return k;
    return std::nullopt;
}

bool is_squared(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::ConcurrenceSq:
        case MeasureKind::EofSq:
        case MeasureKind::NegativitySq:
        case MeasureKind::LogNegativitySq:
        case MeasureKind::DiscordSqFwd:
        case MeasureKind::DiscordSqBwd:
        case MeasureKind::DeficitSqFwd:
        case MeasureKind::DeficitSqBwd: return true;
        default: return false;
    }
}

MeasureKind base_kind(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::ConcurrenceSq: return MeasureKind::Concurrence;
        case MeasureKind::EofSq: return MeasureKind::Eof;
        case MeasureKind::NegativitySq: return MeasureKind::Negativity;
        case MeasureKind::LogNegativitySq: return MeasureKind::LogNegativity;
        case MeasureKind::DiscordSqFwd: return MeasureKind::DiscordFwd;
        case MeasureKind::DiscordSqBwd: return MeasureKind::DiscordBwd;
        case MeasureKind::DeficitSqFwd: return MeasureKind::DeficitFwd;
        case MeasureKind::DeficitSqBwd: return MeasureKind::DeficitBwd;
        default: return kind;
    }
}

std::optional<Direction> measured_side(MeasureKind kind) {
    switch (base_kind(kind)) {
        case MeasureKind::DiscordFwd:
        case MeasureKind::DeficitFwd: return Direction::OnFirst;
        case MeasureKind::DiscordBwd:
        case MeasureKind::DeficitBwd: return Direction::OnSecond;
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------- MeasurementBasis

std::array<double, 3> MeasurementBasis::axis() const { return bloch_axis(theta, phi); }

std::array<ComplexMatrix, 2> MeasurementBasis::projectors() const {
    const auto n = axis();
    const Complex off(n[0], -n[1]);
    ComplexMatrix plus(2, {0.5 * (1.0 + n[2]), 0.5 * off, 0.5 * std::conj(off), 0.5 * (1.0 - n[2])});
    ComplexMatrix minus = ComplexMatrix::identity(2) - plus;
    return {std::move(plus), std::move(minus)};
}

// ---------------------------------------------------------------- entanglement

double concurrence_two_qubit(const DensityMatrix& rho) {
    require_two_qubits(rho);
    // With rho = V diag(p) V^dag, the spectrum of sqrt(rho) rho~ sqrt(rho) is the
    // squared singular spectrum of T = sqrt(p) (V^dag Y V*) sqrt(p), Y = sy x sy.
    // Working on the support keeps roundoff eigenvalues out of the square roots.
    const HermitianEigen eig = hermitian_eigen(rho.matrix());
    const double flip_sign[4] = {-1.0, 1.0, 1.0, -1.0};
    std::vector<std::size_t> support;
    for (std::size_t k = 4; k-- > 0;)
        if (eig.values[k] > 1e-14) support.push_back(k);
    const std::size_t rank = support.size();
    if (rank == 0) return 0.0;

    ComplexMatrix t(rank);
    for (std::size_t a = 0; a < rank; ++a)
        for (std::size_t b = 0; b < rank; ++b) {
            const std::size_t j = support[a], k = support[b];
            Complex w = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                w += std::conj(eig.vectors(i, j)) * flip_sign[i] * std::conj(eig.vectors(3 - i, k));
            t(a, b) = std::sqrt(eig.values[j] * eig.values[k]) * w;
        }

    std::vector<double> sv;
    if (rank == 1) {
        sv = {std::abs(t(0, 0))};
    } else if (rank == 2) {
        const double f = std::norm(t(0, 0)) + std::norm(t(0, 1)) + std::norm(t(1, 0)) + std::norm(t(1, 1));
        const double det = std::abs(t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0));
        const double s1 = std::sqrt(0.5 * (f + std::sqrt(std::max(f * f - 4.0 * det * det, 0.0))));
        sv = {s1, s1 > 0.0 ? det / s1 : 0.0};
    } else {
        ComplexMatrix tt = t * t.adjoint();
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = i; j < rank; ++j) {
                const Complex avg = 0.5 * (tt(i, j) + std::conj(tt(j, i)));
                tt(i, j) = avg;
                tt(j, i) = std::conj(avg);
            }
        sv = hermitian_eigvals(tt);
        for (auto& v : sv) v = std::sqrt(std::max(v, 0.0));
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    double c = sv[0];
    for (std::size_t i = 1; i < sv.size(); ++i) c -= sv[i];
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_pure_cut(const PureState& psi, Qubit nodal) {
    const Qubit keep[] = {nodal};
    const DensityMatrix marginal = partial_trace(psi, keep);
    const ComplexMatrix& r = marginal.matrix();
    const double det = std::clamp(r(0, 0).real() * r(1, 1).real() - std::norm(r(0, 1)), 0.0, 0.25);
    return 2.0 * std::sqrt(det);
}

double eof_from_concurrence(double c) {
    if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) {
        throw std::domain_error("concurrence " + std::to_string(c) + " outside [0, 1]");
    }
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double negativity(const DensityMatrix& rho, std::span<const Qubit> part) {
    const double norm = trace_norm_hermitian(partial_transpose(rho, part));
    return std::max(0.0, 0.5 * (norm - 1.0));
}

double log_negativity(const DensityMatrix& rho, std::span<const Qubit> part) {
    return std::log2(2.0 * negativity(rho, part) + 1.0);
}

double negativity_pure_cut(const PureState& psi, Qubit nodal) {
    if (psi.dim() <= kMaxMatrixDim) {
        const Qubit part[] = {nodal};
        return negativity(DensityMatrix::from_pure(psi), part);
    }
    // Schmidt form: the partial transpose of a 2 x d pure state has trace norm
    // (sqrt l1 + sqrt l2)^2 = 1 + 2 sqrt(det rho_nodal).
    return 0.5 * concurrence_pure_cut(psi, nodal);
}

// ---------------------------------------------------------------- information-theoretic

double mutual_information(const DensityMatrix& rho) {
    require_two_qubits(rho);
    const Qubit first[] = {rho.qubits()[0]};
    const Qubit second[] = {rho.qubits()[1]};
    const double value = von_neumann_entropy(partial_trace(rho, first)) +
                         von_neumann_entropy(partial_trace(rho, second)) - von_neumann_entropy(rho);
    return std::max(0.0, value);
}

double unmeasured_conditional_entropy(const DensityMatrix& rho) {
    require_two_qubits(rho);
    const Qubit second[] = {rho.qubits()[1]};
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, second));
}

double measured_conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis, Direction dir) {
    return OneWayModel(rho, dir).evaluate(basis.axis()).conditional;
}

double dephased_entropy(const DensityMatrix& rho, const MeasurementBasis& basis, Direction dir) {
    return OneWayModel(rho, dir).evaluate(basis.axis()).dephased;
}

OneWayCorrelations one_way_correlations(const DensityMatrix& rho, Direction dir, const OptimizerOptions& options) {
    validate(options);
    const OneWayModel model(rho, dir);

    const int rows = options.theta_steps;
    const int cols = options.phi_steps;
    const double theta_step = std::numbers::pi / (rows - 1);
    const double phi_step = 2.0 * std::numbers::pi / cols;

    std::vector<Minimum> conditional;
    std::vector<Minimum> dephased;
    conditional.reserve(static_cast<std::size_t>(rows * cols));
    dephased.reserve(static_cast<std::size_t>(rows * cols));
    for (int i = 0; i < rows; ++i) {
        const double theta = i * theta_step;
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        for (int j = 0; j < cols; ++j) {
            const double phi = j * phi_step;
            const auto v = model.evaluate({st * std::cos(phi), st * std::sin(phi), ct});
            conditional.push_back({v.conditional, theta, phi});
            dephased.push_back({v.dephased, theta, phi});
        }
    }

    auto refine = [&](std::vector<Minimum>& grid, auto project) {
        const auto starts = std::min<std::size_t>(static_cast<std::size_t>(options.starts), grid.size());
        auto by_value = [](const Minimum& l, const Minimum& r) { return l.value < r.value; };
        std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(starts), grid.end(), by_value);
        auto objective = [&](double theta, double phi) { return project(model.evaluate(bloch_axis(theta, phi))); };
        Minimum best = grid.front();
        for (std::size_t s = 0; s < starts; ++s) {
            const Minimum m = pattern_search(objective, grid[s], theta_step, phi_step, options.min_step);
            if (m.value < best.value) best = m;
        }
        return best;
    };
    const Minimum min_conditional = refine(conditional, [](const OneWayModel::Value& v) { return v.conditional; });
    const Minimum min_dephased = refine(dephased, [](const OneWayModel::Value& v) { return v.dephased; });

    const double joint = von_neumann_entropy(rho);
    const double measured = model.measured_marginal().entropy();

    OneWayCorrelations out;
    // D = I - J = S(measured) - S(joint) + min conditional entropy
    out.discord = std::max(0.0, measured - joint + min_conditional.value);
    out.work_deficit = std::max(0.0, min_dephased.value - joint);
    out.discord_basis = canonical_basis(min_conditional.theta, min_conditional.phi);
    out.deficit_basis = canonical_basis(min_dephased.theta, min_dephased.phi);
    return out;
}

double quantum_discord(const DensityMatrix& rho, Direction dir, const OptimizerOptions& options) {
    return one_way_correlations(rho, dir, options).discord;
}

double work_deficit_one_way(const DensityMatrix& rho, Direction dir, const OptimizerOptions& options) {
    return one_way_correlations(rho, dir, options).work_deficit;
}

// ---------------------------------------------------------------- cut / pair values

double pure_cut_value(const PureState& psi, Qubit nodal, MeasureKind kind) {
    double value = 0.0;
    switch (base_kind(kind)) {
        case MeasureKind::Concurrence: value = concurrence_pure_cut(psi, nodal); break;
        case MeasureKind::Negativity: value = negativity_pure_cut(psi, nodal); break;
        case MeasureKind::LogNegativity: value = std::log2(2.0 * negativity_pure_cut(psi, nodal) + 1.0); break;
        case MeasureKind::Eof:
        case MeasureKind::DiscordFwd:
        case MeasureKind::DiscordBwd:
        case MeasureKind::DeficitFwd:
        case MeasureKind::DeficitBwd: {
            const Qubit keep[] = {nodal};
            value = von_neumann_entropy(partial_trace(psi, keep));
            break;
        }
        default: throw std::invalid_argument("unsupported measure kind");
    }
    return is_squared(kind) ? value * value : value;
}

double pair_value(const DensityMatrix& rho, MeasureKind kind, const OptimizerOptions& options) {
    require_two_qubits(rho);
    const Qubit first[] = {rho.qubits()[0]};
    double value = 0.0;
    switch (base_kind(kind)) {
        case MeasureKind::Concurrence: value = concurrence_two_qubit(rho); break;
        case MeasureKind::Eof: value = eof_from_concurrence(concurrence_two_qubit(rho)); break;
        case MeasureKind::Negativity: value = negativity(rho, first); break;
        case MeasureKind::LogNegativity: value = log_negativity(rho, first); break;
        case MeasureKind::DiscordFwd: value = quantum_discord(rho, Direction::OnFirst, options); break;
        case MeasureKind::DiscordBwd: value = quantum_discord(rho, Direction::OnSecond, options); break;
        case MeasureKind::DeficitFwd: value = work_deficit_one_way(rho, Direction::OnFirst, options); break;
        case MeasureKind::DeficitBwd: value = work_deficit_one_way(rho, Direction::OnSecond, options); break;
        default: throw std::invalid_argument("unsupported measure kind");
    }
    return is_squared(kind) ? value * value : value;
}

}  // namespace qorrelate
