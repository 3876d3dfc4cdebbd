#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qorrelate/linalg.hpp"
#include "qorrelate/pure_state.hpp"

namespace qorrelate {

// Which party of a two-qubit state is measured. OnFirst is the forward
// arrow (measure A of rho_AB), OnSecond the backward arrow (measure B).
// Work-deficit uses the same arrow convention as discord.
enum class Direction { OnFirst, OnSecond };

// The sixteen scored quantities. Squared kinds square every term before the
// monogamy score is assembled.
enum class MeasureKind {
    Concurrence,
    ConcurrenceSq,
    Eof,
    EofSq,
    Negativity,
    NegativitySq,
    LogNegativity,
    LogNegativitySq,
    DiscordFwd,
    DiscordBwd,
    DiscordSqFwd,
    DiscordSqBwd,
    DeficitFwd,
    DeficitBwd,
    DeficitSqFwd,
    DeficitSqBwd,
};

inline constexpr std::array<MeasureKind, 16> kAllMeasureKinds = {
    MeasureKind::Concurrence,  MeasureKind::ConcurrenceSq, MeasureKind::Eof,           MeasureKind::EofSq,
    MeasureKind::Negativity,   MeasureKind::NegativitySq,  MeasureKind::LogNegativity, MeasureKind::LogNegativitySq,
    MeasureKind::DiscordFwd,   MeasureKind::DiscordBwd,    MeasureKind::DiscordSqFwd,  MeasureKind::DiscordSqBwd,
    MeasureKind::DeficitFwd,   MeasureKind::DeficitBwd,    MeasureKind::DeficitSqFwd,  MeasureKind::DeficitSqBwd,
};

// Flag spelling: c, c2, e, e2, n, n2, ln, ln2, d-fwd, d-bwd, d2-fwd, d2-bwd,
// wd-fwd, wd-bwd, wd2-fwd, wd2-bwd.
std::string_view measure_name(MeasureKind kind);
std::optional<MeasureKind> parse_measure(std::string_view name);
bool is_squared(MeasureKind kind);
// The unsquared kind underlying `kind`.
MeasureKind base_kind(MeasureKind kind);
std::optional<Direction> measured_side(MeasureKind kind);

// Rank-one projective measurement P_pm = (I pm n.sigma)/2 on one qubit,
// n = (sin t cos p, sin t sin p, cos t).
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;

    std::array<double, 3> axis() const;
    std::array<ComplexMatrix, 2> projectors() const;
};

struct OptimizerOptions {
    int theta_steps = 60;
    int phi_steps = 120;
    int starts = 3;
    // Pattern search halves its step from the grid spacing down to this.
    double min_step = 1e-5;
};

// ---------------------------------------------------------------- entanglement

// Wootters: eigenvalues of sqrt(rho) rho~ sqrt(rho), square-rooted.
double concurrence_two_qubit(const DensityMatrix& rho);
// 2 sqrt(det rho_nodal) for a pure 2 x 2^(n-1) cut.
double concurrence_pure_cut(const PureState& psi, Qubit nodal);
double eof_from_concurrence(double c);

double negativity(const DensityMatrix& rho, std::span<const Qubit> part);
double log_negativity(const DensityMatrix& rho, std::span<const Qubit> part);
// Negativity of |psi><psi| across nodal : rest.
double negativity_pure_cut(const PureState& psi, Qubit nodal);

// ---------------------------------------------------------------- information-theoretic

double mutual_information(const DensityMatrix& rho);
// S(rho) - S(second-qubit marginal); negative for entangled pairs.
double unmeasured_conditional_entropy(const DensityMatrix& rho);

// sum_i p_i S(rho_{unmeasured|i}) for one given basis; outcomes with
// p_i < 1e-12 contribute zero.
double measured_conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis, Direction dir);
// Entropy of the state after dephasing the measured qubit in `basis`.
double dephased_entropy(const DensityMatrix& rho, const MeasurementBasis& basis, Direction dir);

struct OneWayCorrelations {
    double discord = 0.0;
    double work_deficit = 0.0;
    MeasurementBasis discord_basis;
    MeasurementBasis deficit_basis;
};

// Discord and one-way work-deficit from one shared grid pass followed by
// separate local refinements.
OneWayCorrelations one_way_correlations(const DensityMatrix& rho, Direction dir,
                                        const OptimizerOptions& options = {});
double quantum_discord(const DensityMatrix& rho, Direction dir, const OptimizerOptions& options = {});
double work_deficit_one_way(const DensityMatrix& rho, Direction dir, const OptimizerOptions& options = {});

// ---------------------------------------------------------------- pure cuts

// Value of `kind` across nodal : rest. E, D and work-deficit all reduce to
// S(rho_nodal); squared kinds square the base value.
double pure_cut_value(const PureState& psi, Qubit nodal, MeasureKind kind);

// Value of `kind` on a two-qubit state whose first factor is the nodal party.
double pair_value(const DensityMatrix& rho, MeasureKind kind, const OptimizerOptions& options = {});

}  // namespace qorrelate
