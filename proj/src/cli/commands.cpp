#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "output.hpp"
#include "qorrelate/cli.hpp"
#include "qorrelate/dicke.hpp"
#include "qorrelate/monogamy.hpp"

#ifndef QORRELATE_VERSION
#define QORRELATE_VERSION "unknown"
#endif

namespace qorrelate::cli {

namespace {

// Largest n for which dicke-scan builds the dense 2^n state.
constexpr int kDenseDickeMax = 10;

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string join_measures(const std::vector<MeasureKind>& kinds) {
    std::string out;
    for (std::size_t i = 0; i < kinds.size(); ++i) out += (i ? "," : "") + std::string(measure_name(kinds[i]));
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream stream(text);
    while (std::getline(stream, part, sep)) parts.push_back(trim(part));
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw std::invalid_argument("cannot parse " + what + " '" + text + "'");
    return value;
}

unsigned effective_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QORRELATE_WORKERS"); env != nullptr && *env != '\0') {
        const double parsed = parse_double(env, "QORRELATE_WORKERS");
        if (parsed < 0 || parsed != std::floor(parsed)) throw std::invalid_argument("QORRELATE_WORKERS must be >= 0");
        return resolve_workers(static_cast<unsigned>(parsed));
    }
    return resolve_workers(0);
}

// Provenance common to every command. Worker count and output path are left
// out so that files do not depend on where or how parallel they were made.
void base_metadata(Document& doc, const RunConfig& cfg) {
    doc.meta("generator", std::string("qorrelate ") + QORRELATE_VERSION);
    doc.meta("command", cfg.subcommand);
}

void optimizer_metadata(Document& doc, const RunConfig& cfg) {
    doc.meta("theta_steps", std::to_string(cfg.optimizer.theta_steps));
    doc.meta("phi_steps", std::to_string(cfg.optimizer.phi_steps));
    doc.meta("starts", std::to_string(cfg.optimizer.starts));
    doc.meta("min_step", format_number(cfg.optimizer.min_step));
    doc.meta("arrow_convention", "fwd measures the nodal party, bwd measures the partner (discord and work-deficit)");
}

void emit(const Document& doc, const RunConfig& cfg, std::ostream& out) {
    const std::string text = cfg.format == Format::Json ? render_json(doc) : render_csv(doc);
    if (cfg.output_path.empty()) {
        out << text;
        out.flush();
    } else {
        write_atomically(cfg.output_path, text);
    }
}

void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure(message);
}

// ---------------------------------------------------------------- table

Document cmd_table(const RunConfig& cfg) {
    const auto family = parse_family(cfg.family);
    if (!family) throw std::invalid_argument("unknown family '" + cfg.family + "'");
    const EnsembleSpec spec{*family, cfg.n, cfg.r, cfg.samples, cfg.seed};
    spec.validate();
    const std::vector<MeasureKind> kinds =
        cfg.measures.empty() ? std::vector<MeasureKind>(kAllMeasureKinds.begin(), kAllMeasureKinds.end())
                             : cfg.measures;

    EvaluationOptions options;
    options.optimizer = cfg.optimizer;
    options.workers = effective_workers(cfg.workers);
    const EnsembleScores scores = evaluate_ensemble(spec, kinds, cfg.nodal, options);
    const std::vector<PercentageRow> rows = classify(scores, cfg.eps);

    Document doc;
    base_metadata(doc, cfg);
    doc.meta("family", std::string(family_name(spec.family)));
    doc.meta("n", std::to_string(spec.n));
    doc.meta("r", std::to_string(spec.r));
    doc.meta("samples", std::to_string(spec.samples));
    doc.meta("seed", std::to_string(spec.master_seed));
    doc.meta("measures", join_measures(kinds));
    doc.meta("nodal", std::to_string(cfg.nodal));
    doc.meta("eps", format_number(cfg.eps));
    optimizer_metadata(doc, cfg);

    doc.columns = {"family", "n", "r", "kind", "samples", "monogamous_count", "percentage", "eps", "seed"};
    for (const PercentageRow& row : rows) {
        doc.rows.push_back({std::string(family_name(spec.family)), spec.n, spec.r, std::string(measure_name(row.kind)),
                            row.total, row.monogamous_count, row.percentage, row.classification_epsilon,
                            spec.master_seed});
    }

    if (cfg.check) {
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            for (std::uint64_t i = 0; i < spec.samples; ++i)
                require(std::isfinite(scores.at(i, k)), "non-finite score for " + std::string(measure_name(kinds[k])));
            const PercentageRow& row = rows[k];
            require(row.monogamous_count <= row.total, "count exceeds total");
            require(row.percentage == 100.0 * static_cast<double>(row.monogamous_count) / static_cast<double>(row.total),
                    "percentage inconsistent with count");
            if (kinds[k] == MeasureKind::ConcurrenceSq) {
                for (std::uint64_t i = 0; i < spec.samples; ++i)
                    require(scores.at(i, k) >= -1e-9, "tangle below -1e-9 at sample " + std::to_string(i));
            }
        }
    }
    return doc;
}

// ---------------------------------------------------------------- state

PureState named_state(const RunConfig& cfg, std::string& label) {
    if (!cfg.amplitudes_path.empty()) {
        label = "file:" + cfg.amplitudes_path;
        return read_amplitude_file(cfg.amplitudes_path);
    }
    std::string name = cfg.name;
    int n = cfg.n;
    int r = cfg.r;
    if (name.rfind("dicke:", 0) == 0) {
        const auto parts = split(name.substr(6), ',');
        if (parts.size() != 2) throw std::invalid_argument("expected dicke:n,r");
        n = static_cast<int>(parse_double(parts[0], "n"));
        r = static_cast<int>(parse_double(parts[1], "r"));
        name = "dicke";
    }
    label = name + " n=" + std::to_string(n) + (name == "dicke" ? " r=" + std::to_string(r) : "");
    if (name == "w") return w_state(n);
    if (name == "ghz") return ghz_state(n);
    if (name == "dicke") return dicke_state(n, r);
    throw std::invalid_argument("unknown state name '" + cfg.name + "' (expected w, ghz, dicke or dicke:n,r)");
}

Document cmd_state(const RunConfig& cfg) {
    if (cfg.name.empty() == cfg.amplitudes_path.empty())
        throw std::invalid_argument("state needs exactly one of --name or --amplitudes");
    std::string label;
    const PureState psi = named_state(cfg, label);
    const auto records = monogamy_scores(psi, kAllMeasureKinds, cfg.nodal, cfg.optimizer);
    const Theorem4Check t4 = theorem4_bound_check(psi, cfg.nodal, cfg.optimizer);
    const double tau = records[static_cast<std::size_t>(MeasureKind::ConcurrenceSq)].score;

    Document doc;
    base_metadata(doc, cfg);
    doc.meta("state", label);
    doc.meta("qubits", std::to_string(psi.qubits()));
    doc.meta("nodal", std::to_string(cfg.nodal));
    optimizer_metadata(doc, cfg);

    doc.columns = {"kind", "cut_value", "pair_values", "score"};
    Json extra_records = Json::array();
    for (const auto& rec : records) {
        std::string pairs;
        Json pair_json = Json::array();
        for (std::size_t j = 0; j < rec.pair_values.size(); ++j) {
            pairs += (j ? " " : "") + format_number(rec.pair_values[j]);
            pair_json.push_back(rec.pair_values[j]);
        }
        doc.rows.push_back({std::string(measure_name(rec.kind)), rec.cut_value, pairs, rec.score});
        extra_records.push_back(
            {{"kind", measure_name(rec.kind)}, {"cut_value", rec.cut_value}, {"pair_values", pair_json}, {"score", rec.score}});
    }
    doc.rows.push_back({"tangle", nullptr, nullptr, tau});
    doc.rows.push_back({"theorem4_bound", nullptr, nullptr, t4.bound});
    doc.rows.push_back({"theorem4_premise", nullptr, nullptr, t4.premise ? 1 : 0});
    doc.extra["records"] = std::move(extra_records);
    doc.extra["tangle"] = tau;
    doc.extra["theorem4"] = {{"score", t4.score}, {"bound", t4.bound}, {"tangle", t4.tangle},
                             {"premise", t4.premise}, {"bound_holds", t4.bound_holds}};

    if (cfg.check) {
        for (const auto& rec : records)
            require(std::abs(rec.score - rec.recomputed_score()) <= 1e-12, "score not recomputable");
        require(tau >= -1e-9, "tangle below -1e-9");
        require(t4.bound_holds, "discord score exceeds the zero-tangle bound");
    }
    return doc;
}

// ---------------------------------------------------------------- dicke-scan

Document cmd_dicke_scan(const RunConfig& cfg) {
    if (cfg.n_min < 3 || cfg.n_max < cfg.n_min) throw std::invalid_argument("need 3 <= n-min <= n-max");
    if (cfg.r_min < 1) throw std::invalid_argument("r-min must be >= 1");

    Document doc;
    base_metadata(doc, cfg);
    doc.meta("n_min", std::to_string(cfg.n_min));
    doc.meta("n_max", std::to_string(cfg.n_max));
    doc.meta("r_min", std::to_string(cfg.r_min));
    doc.meta("r_max", cfg.r_max > 0 ? std::to_string(cfg.r_max) : "n-1");
    doc.meta("dense_pipeline_max_n", std::to_string(kDenseDickeMax));
    optimizer_metadata(doc, cfg);
    doc.columns = {"n", "r", "discord_score", "workdeficit_score_fwd", "workdeficit_score_bwd", "tangle"};

    const MeasureKind kinds[] = {MeasureKind::DiscordBwd, MeasureKind::DeficitFwd, MeasureKind::DeficitBwd,
                                 MeasureKind::ConcurrenceSq};
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        const int r_hi = cfg.r_max > 0 ? std::min(cfg.r_max, n - 1) : n - 1;
        for (int r = cfg.r_min; r <= r_hi; ++r) {
            double discord = 0.0;
            double fwd = 0.0;
            double bwd = 0.0;
            double tau = 0.0;
            if (n <= kDenseDickeMax) {
                const auto records = monogamy_scores(dicke_state(n, r), kinds, 1, cfg.optimizer);
                discord = records[0].score;
                fwd = records[1].score;
                bwd = records[2].score;
                tau = records[3].score;
                if (cfg.check) {
                    require(std::abs(discord - dicke_discord_score(n, r)) <= 1e-4,
                            "closed-form discord disagrees at n=" + std::to_string(n) + " r=" + std::to_string(r));
                    require(std::abs(tau - dicke_tangle(n, r)) <= 1e-8, "closed-form tangle disagrees");
                }
            } else {
                discord = dicke_discord_score(n, r);
                fwd = dicke_workdeficit_score(n, r, Direction::OnFirst, cfg.optimizer);
                bwd = dicke_workdeficit_score(n, r, Direction::OnSecond, cfg.optimizer);
                tau = dicke_tangle(n, r);
            }
            if (cfg.check && r == 1) require(std::abs(tau) <= 1e-8, "W-state tangle is not zero");
            doc.rows.push_back({n, r, discord, fwd, bwd, tau});
        }
    }
    return doc;
}

// ---------------------------------------------------------------- fit

std::vector<ScalingPoint> read_fit_points(const RunConfig& cfg) {
    std::ifstream file(cfg.input_path);
    if (!file) throw std::runtime_error("cannot open " + cfg.input_path);
    std::string line;
    std::vector<std::string> header;
    std::vector<ScalingPoint> points;
    int n_col = -1;
    int p_col = -1;
    int kind_col = -1;
    double scale = 1.0;
    std::set<std::string> kinds_seen;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line, ',');
        if (header.empty()) {
            header = cells;
            for (int c = 0; c < static_cast<int>(header.size()); ++c) {
                const std::string& h = header[static_cast<std::size_t>(c)];
                if (h == "n") n_col = c;
                if (h == "kind") kind_col = c;
                if (h == "percentage" && p_col < 0) {
                    p_col = c;
                    scale = 0.01;
                }
                if ((h == "fraction" || h == "p") && p_col < 0) p_col = c;
            }
            if (n_col < 0 || p_col < 0)
                throw std::invalid_argument("fit input needs an 'n' column and a 'percentage', 'fraction' or 'p' column");
            continue;
        }
        if (cells == header) continue;  // concatenated table outputs repeat their header
        if (cells.size() != header.size())
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " cells");
        if (kind_col >= 0) {
            const std::string& kind = cells[static_cast<std::size_t>(kind_col)];
            kinds_seen.insert(kind);
            if (!cfg.fit_kind.empty() && kind != cfg.fit_kind) continue;
        }
        points.push_back({parse_double(cells[static_cast<std::size_t>(n_col)], "n"),
                          scale * parse_double(cells[static_cast<std::size_t>(p_col)], "p")});
    }
    if (kinds_seen.size() > 1 && cfg.fit_kind.empty()) {
        // several kinds mixed together would make a meaningless fit
        throw std::invalid_argument("input mixes several kinds; select one with --kind");
    }
    return points;
}

Document cmd_fit(const RunConfig& cfg) {
    const std::vector<ScalingPoint> points = read_fit_points(cfg);
    const ScalingFit fit = scaling_fit(points, cfg.p_c);

    Document doc;
    base_metadata(doc, cfg);
    doc.meta("input", cfg.input_path);
    if (!cfg.fit_kind.empty()) doc.meta("kind", cfg.fit_kind);
    doc.meta("p_c", format_number(cfg.p_c));
    doc.meta("model", "log(p - p_c) = intercept - alpha log(n)");
    for (std::size_t i = 0; i < points.size(); ++i)
        doc.meta("point_" + std::to_string(i + 1), format_number(points[i].n) + "," + format_number(points[i].p));

    doc.columns = {"points", "p_c", "alpha", "intercept", "residual"};
    doc.rows.push_back({points.size(), fit.p_c, fit.alpha, fit.intercept, fit.residual});
    if (cfg.check) require(std::isfinite(fit.alpha) && std::isfinite(fit.residual), "non-finite fit");
    return doc;
}

// ---------------------------------------------------------------- parsing

void add_ensemble_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--family", cfg.family, "haar | w | dicke | gen-dicke | symmetric")->capture_default_str();
    sub.add_option("--n", cfg.n, "qubit count")->capture_default_str();
    sub.add_option("--r", cfg.r, "excitation count (dicke, gen-dicke)")->capture_default_str();
    sub.add_option("--samples", cfg.samples, "sample count")->capture_default_str();
    sub.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
}

void add_optimizer_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--theta-steps", cfg.optimizer.theta_steps, "optimizer grid rows")->capture_default_str();
    sub.add_option("--phi-steps", cfg.optimizer.phi_steps, "optimizer grid columns")->capture_default_str();
    sub.add_option("--starts", cfg.optimizer.starts, "pattern-search starts")->capture_default_str();
    sub.add_option("--min-step", cfg.optimizer.min_step, "pattern-search step floor (radians)")
        ->capture_default_str();
}

void add_output_options(CLI::App& sub, RunConfig& cfg, std::string& format) {
    sub.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub.add_option("--output,-o", cfg.output_path, "output file (default stdout)");
    sub.add_option("--workers", cfg.workers, "worker threads (0: QORRELATE_WORKERS or all cores)");
    sub.add_flag("--check", cfg.check, "assert invariants; exit 3 on violation");
}

}  // namespace

std::vector<MeasureKind> parse_measure_list(const std::string& text) {
    std::vector<MeasureKind> kinds;
    for (const std::string& token : split(text, ',')) {
        if (token.empty()) continue;
        if (token == "all") {
            kinds.insert(kinds.end(), kAllMeasureKinds.begin(), kAllMeasureKinds.end());
            continue;
        }
        const auto kind = parse_measure(token);
        if (!kind) throw std::invalid_argument("unknown measure '" + token + "'");
        kinds.push_back(*kind);
    }
    if (kinds.empty()) throw std::invalid_argument("empty measure list");
    std::vector<MeasureKind> unique;
    for (MeasureKind k : kinds)
        if (std::find(unique.begin(), unique.end(), k) == unique.end()) unique.push_back(k);
    return unique;
}

PureState read_amplitude_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open amplitude file " + path);
    std::vector<Complex> amplitudes;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        double re = 0.0;
        double im = 0.0;
        std::string extra;
        if (!(fields >> re)) throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected 're im'");
        if (!(fields >> im)) {
            if (!fields.eof()) throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": bad imaginary part");
            im = 0.0;
        }
        fields.clear();
        if (fields >> extra) throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": trailing text");
        amplitudes.emplace_back(re, im);
    }
    return PureState::normalized(std::move(amplitudes));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monogamy scores of quantum correlation measures for n-qubit pure states", "qorrelate"};
    app.set_version_flag("--version", std::string("qorrelate ") + QORRELATE_VERSION);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "csv";
    std::string measures;

    CLI::App* table = app.add_subcommand("table", "monogamy percentages over a random ensemble");
    add_ensemble_options(*table, cfg);
    table->add_option("--measures", measures, "comma-separated kinds or 'all'")->default_val("all");
    table->add_option("--nodal", cfg.nodal, "nodal qubit")->capture_default_str();
    table->add_option("--eps", cfg.eps, "a score >= -eps counts as monogamous")->capture_default_str();
    add_optimizer_options(*table, cfg);
    add_output_options(*table, cfg, format);

    CLI::App* state = app.add_subcommand("state", "all scores of one named or file-supplied state");
    state->add_option("--name", cfg.name, "w | ghz | dicke | dicke:n,r");
    state->add_option("--amplitudes", cfg.amplitudes_path, "file with one 're im' amplitude per line");
    state->add_option("--n", cfg.n, "qubit count")->capture_default_str();
    state->add_option("--r", cfg.r, "excitation count for dicke")->capture_default_str();
    state->add_option("--nodal", cfg.nodal, "nodal qubit")->capture_default_str();
    add_optimizer_options(*state, cfg);
    add_output_options(*state, cfg, format);

    CLI::App* scan = app.add_subcommand("dicke-scan", "Dicke-state discord, work-deficit and tangle scores");
    scan->add_option("--n-min", cfg.n_min, "smallest n")->capture_default_str();
    scan->add_option("--n-max", cfg.n_max, "largest n")->capture_default_str();
    scan->add_option("--r-min", cfg.r_min, "smallest r")->capture_default_str();
    scan->add_option("--r-max", cfg.r_max, "largest r (0: n-1)")->capture_default_str();
    add_optimizer_options(*scan, cfg);
    add_output_options(*scan, cfg, format);

    CLI::App* fit = app.add_subcommand("fit", "fit p_n = p_c + A n^-alpha to (n, percentage) data");
    fit->add_option("--input", cfg.input_path, "CSV with n and percentage (or fraction) columns")->required();
    fit->add_option("--pc", cfg.p_c, "assumed limit p_c, as a fraction")->capture_default_str();
    fit->add_option("--kind", cfg.fit_kind, "use only rows of this kind");
    add_output_options(*fit, cfg, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        cfg.format = format == "json" ? Format::Json : Format::Csv;
        if (cfg.subcommand == "table") cfg.measures = parse_measure_list(measures);

        Document doc;
        if (cfg.subcommand == "table") doc = cmd_table(cfg);
        if (cfg.subcommand == "state") doc = cmd_state(cfg);
        if (cfg.subcommand == "dicke-scan") doc = cmd_dicke_scan(cfg);
        if (cfg.subcommand == "fit") doc = cmd_fit(cfg);
        emit(doc, cfg, out);
    } catch (const CheckFailure& e) {
        err << "qorrelate: check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        err << "qorrelate: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "qorrelate: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace qorrelate::cli
