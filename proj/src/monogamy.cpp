#include "qorrelate/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace qorrelate {

namespace {

void require_nodal(const PureState& psi, Qubit nodal) {
    if (nodal < 1 || nodal > psi.qubits()) {
        throw InvalidSubsetError("nodal qubit " + std::to_string(nodal) + " outside register of " +
                                 std::to_string(psi.qubits()) + " qubits");
    }
}

// Pair quantities of one (nodal, partner) marginal, computed on demand.
class PairProfile {
public:
    PairProfile(DensityMatrix rho, const OptimizerOptions& options) : rho_(std::move(rho)), options_(options) {}

    double base_value(MeasureKind base) {
        switch (base) {
            case MeasureKind::Concurrence: return concurrence();
            case MeasureKind::Eof: return eof_from_concurrence(concurrence());
            case MeasureKind::Negativity: return negativity_value();
            case MeasureKind::LogNegativity: return std::log2(2.0 * negativity_value() + 1.0);
            case MeasureKind::DiscordFwd: return one_way(Direction::OnFirst).discord;
            case MeasureKind::DiscordBwd: return one_way(Direction::OnSecond).discord;
            case MeasureKind::DeficitFwd: return one_way(Direction::OnFirst).work_deficit;
            case MeasureKind::DeficitBwd: return one_way(Direction::OnSecond).work_deficit;
            default: throw std::invalid_argument("unsupported measure kind");
        }
    }

private:
    double concurrence() {
        if (!concurrence_) concurrence_ = concurrence_two_qubit(rho_);
        return *concurrence_;
    }
    double negativity_value() {
        if (!negativity_) {
            const Qubit first[] = {rho_.qubits()[0]};
            negativity_ = negativity(rho_, first);
        }
        return *negativity_;
    }
    const OneWayCorrelations& one_way(Direction dir) {
        auto& slot = dir == Direction::OnFirst ? forward_ : backward_;
        if (!slot) slot = one_way_correlations(rho_, dir, options_);
        return *slot;
    }

    DensityMatrix rho_;
    const OptimizerOptions& options_;
    std::optional<double> concurrence_;
    std::optional<double> negativity_;
    std::optional<OneWayCorrelations> forward_;
    std::optional<OneWayCorrelations> backward_;
};

}  // namespace

double MonogamyRecord::recomputed_score() const {
    return cut_value - std::accumulate(pair_values.begin(), pair_values.end(), 0.0);
}

DensityMatrix nodal_pair(const PureState& psi, Qubit nodal, Qubit partner) {
    const Qubit keep[] = {nodal, partner};
    DensityMatrix rho = partial_trace(psi, keep);
    if (nodal < partner) return rho;
    return reorder(rho, keep);
}

std::vector<MonogamyRecord> monogamy_scores(const PureState& psi, std::span<const MeasureKind> kinds, Qubit nodal,
                                            const OptimizerOptions& options) {
    require_nodal(psi, nodal);
    std::vector<MonogamyRecord> records;
    records.reserve(kinds.size());
    for (MeasureKind kind : kinds) {
        MonogamyRecord rec;
        rec.kind = kind;
        rec.nodal = nodal;
        rec.cut_value = pure_cut_value(psi, nodal, kind);
        records.push_back(std::move(rec));
    }
    for (Qubit partner = 1; partner <= psi.qubits(); ++partner) {
        if (partner == nodal) continue;
        PairProfile profile(nodal_pair(psi, nodal, partner), options);
        for (auto& rec : records) {
            const double v = profile.base_value(base_kind(rec.kind));
            rec.pair_values.push_back(is_squared(rec.kind) ? v * v : v);
        }
    }
    for (auto& rec : records) rec.score = rec.recomputed_score();
    return records;
}

MonogamyRecord monogamy_score(const PureState& psi, MeasureKind kind, Qubit nodal, const OptimizerOptions& options) {
    const MeasureKind kinds[] = {kind};
    return std::move(monogamy_scores(psi, kinds, nodal, options).front());
}

double tangle(const PureState& psi, Qubit nodal) {
    return monogamy_score(psi, MeasureKind::ConcurrenceSq, nodal).score;
}

Theorem4Check theorem4_bound_check(const PureState& psi, Qubit nodal, const OptimizerOptions& options) {
    const MeasureKind kinds[] = {MeasureKind::DiscordBwd, MeasureKind::ConcurrenceSq};
    const auto records = monogamy_scores(psi, kinds, nodal, options);
    Theorem4Check check;
    check.score = records[0].score;
    check.tangle = records[1].score;
    for (Qubit partner = 1; partner <= psi.qubits(); ++partner) {
        if (partner == nodal) continue;
        check.bound += unmeasured_conditional_entropy(nodal_pair(psi, nodal, partner));
    }
    check.premise = std::abs(check.tangle) <= 1e-8;
    check.bound_holds = !check.premise || check.score <= check.bound + 1e-6;
    return check;
}

// ---------------------------------------------------------------- ensembles

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

EnsembleScores evaluate_ensemble(const EnsembleSpec& spec, std::span<const MeasureKind> kinds, Qubit nodal,
                                 const EvaluationOptions& options) {
    spec.validate();
    if (kinds.empty()) throw std::invalid_argument("no measure kinds requested");
    if (nodal < 1 || nodal > spec.n) throw InvalidSubsetError("nodal qubit outside the register");

    EnsembleScores out{spec, {kinds.begin(), kinds.end()}, nodal, std::vector<double>(spec.samples * kinds.size())};
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(options.workers), spec.samples));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&](unsigned worker) {
        try {
            for (std::uint64_t i = worker; i < spec.samples; i += workers) {
                const auto records = monogamy_scores(sample_state(spec, i), kinds, nodal, options.optimizer);
                for (std::size_t k = 0; k < records.size(); ++k) out.scores[i * kinds.size() + k] = records[k].score;
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

PercentageRow classify(const EnsembleScores& scores, std::size_t kind_index, double eps) {
    PercentageRow row;
    row.ensemble = scores.spec;
    row.kind = scores.kinds.at(kind_index);
    row.total = scores.spec.samples;
    row.classification_epsilon = eps;
    for (std::uint64_t i = 0; i < row.total; ++i)
        if (scores.at(i, kind_index) >= -eps) ++row.monogamous_count;
    row.percentage = 100.0 * static_cast<double>(row.monogamous_count) / static_cast<double>(row.total);
    return row;
}

std::vector<PercentageRow> classify(const EnsembleScores& scores, double eps) {
    std::vector<PercentageRow> rows;
    for (std::size_t k = 0; k < scores.kinds.size(); ++k) rows.push_back(classify(scores, k, eps));
    return rows;
}

std::vector<PercentageRow> percentage_table(const EnsembleSpec& spec, std::span<const MeasureKind> kinds, Qubit nodal,
                                            double eps, const EvaluationOptions& options) {
    return classify(evaluate_ensemble(spec, kinds, nodal, options), eps);
}

// ---------------------------------------------------------------- scaling law

ScalingFit scaling_fit(std::span<const ScalingPoint> points, double p_c) {
    if (points.size() < 2) throw std::invalid_argument("scaling fit needs at least two points");
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& pt : points) {
        if (!(pt.n > 0.0)) throw std::invalid_argument("scaling fit needs positive n");
        if (!(pt.p > p_c)) {
            throw std::domain_error("p_n = " + std::to_string(pt.p) + " at n = " + std::to_string(pt.n) +
                                    " does not exceed p_c = " + std::to_string(p_c));
        }
        xs.push_back(std::log(pt.n));
        ys.push_back(std::log(pt.p - p_c));
    }
    const auto count = static_cast<double>(xs.size());
    const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / count;
    const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("scaling fit needs at least two distinct n");
    const double slope = sxy / sxx;

    ScalingFit fit;
    fit.points.assign(points.begin(), points.end());
    fit.p_c = p_c;
    fit.alpha = -slope;
    fit.intercept = mean_y - slope * mean_x;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + slope * xs[i]);
        fit.residual += r * r;
    }
    return fit;
}

}  // namespace qorrelate
