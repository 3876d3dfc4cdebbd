#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qorrelate/measures.hpp"
#include "qorrelate/states.hpp"

namespace qorrelate {

inline constexpr double kDefaultMonogamyEpsilon = 1e-9;

// delta_Q = Q(nodal : rest) - sum_j Q(nodal, j). For squared kinds the cut
// and pair values are already squared.
struct MonogamyRecord {
    MeasureKind kind = MeasureKind::ConcurrenceSq;
    Qubit nodal = 1;
    double cut_value = 0.0;
    std::vector<double> pair_values;  // partners in ascending label order
    double score = 0.0;

    double recomputed_score() const;
};

MonogamyRecord monogamy_score(const PureState& psi, MeasureKind kind, Qubit nodal = 1,
                              const OptimizerOptions& options = {});
// One record per kind; pair marginals and optimizations are shared between kinds.
std::vector<MonogamyRecord> monogamy_scores(const PureState& psi, std::span<const MeasureKind> kinds,
                                            Qubit nodal = 1, const OptimizerOptions& options = {});

// Two-qubit marginal of (nodal, partner) with the nodal party first.
DensityMatrix nodal_pair(const PureState& psi, Qubit nodal, Qubit partner);

double tangle(const PureState& psi, Qubit nodal = 1);

struct Theorem4Check {
    double score = 0.0;  // discord score, measurement on non-nodal parties
    double bound = 0.0;  // sum_j S(rho_{nodal|j})
    double tangle = 0.0;
    bool premise = false;     // tangle <= 1e-8
    bool bound_holds = true;  // score <= bound + 1e-6; vacuous without the premise
};

Theorem4Check theorem4_bound_check(const PureState& psi, Qubit nodal = 1, const OptimizerOptions& options = {});

// ---------------------------------------------------------------- ensembles

struct EvaluationOptions {
    OptimizerOptions optimizer;
    unsigned workers = 1;  // 0 = hardware concurrency
};

// Scores of every sample, row-major (sample, kind). Each sample depends only
// on (spec, index), so the table is identical for any worker count.
struct EnsembleScores {
    EnsembleSpec spec;
    std::vector<MeasureKind> kinds;
    Qubit nodal = 1;
    std::vector<double> scores;

    double at(std::uint64_t sample, std::size_t kind_index) const {
        return scores[sample * kinds.size() + kind_index];
    }
};

EnsembleScores evaluate_ensemble(const EnsembleSpec& spec, std::span<const MeasureKind> kinds, Qubit nodal = 1,
                                 const EvaluationOptions& options = {});

struct PercentageRow {
    EnsembleSpec ensemble;
    MeasureKind kind = MeasureKind::ConcurrenceSq;
    std::uint64_t monogamous_count = 0;
    std::uint64_t total = 0;
    double percentage = 0.0;
    double classification_epsilon = kDefaultMonogamyEpsilon;
};

// A sample is monogamous when its score is >= -eps.
PercentageRow classify(const EnsembleScores& scores, std::size_t kind_index, double eps);
std::vector<PercentageRow> classify(const EnsembleScores& scores, double eps);

std::vector<PercentageRow> percentage_table(const EnsembleSpec& spec, std::span<const MeasureKind> kinds,
                                            Qubit nodal = 1, double eps = kDefaultMonogamyEpsilon,
                                            const EvaluationOptions& options = {});

unsigned resolve_workers(unsigned requested);

// ---------------------------------------------------------------- scaling law

struct ScalingPoint {
    double n = 0.0;
    double p = 0.0;
};

// Least squares of log(p_n - p_c) against log n; alpha is the negated slope.
struct ScalingFit {
    std::vector<ScalingPoint> points;
    double p_c = 0.0;
    double alpha = 0.0;
    double intercept = 0.0;  // fitted log amplitude; 0 for an exact n^-alpha law
    double residual = 0.0;   // sum of squared log-space residuals
};

// Throws std::domain_error if any p_n <= p_c, std::invalid_argument for fewer
// than two points or repeated n.
ScalingFit scaling_fit(std::span<const ScalingPoint> points, double p_c);

}  // namespace qorrelate
