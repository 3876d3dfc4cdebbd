#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qorrelate/measures.hpp"
#include "qorrelate/states.hpp"

namespace qorrelate::cli {

enum class Format { Csv, Json };

struct RunConfig {
    std::string subcommand;

    // ensemble / named state
    std::string family = "haar";
    int n = 3;
    int r = 0;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
    std::string name;             // state: w | ghz | dicke
    std::string amplitudes_path;  // state: file of "re im" lines

    std::vector<MeasureKind> measures;
    Qubit nodal = 1;
    double eps = 1e-9;
    OptimizerOptions optimizer;

    // dicke-scan
    int n_min = 3;
    int n_max = 12;
    int r_min = 1;
    int r_max = 0;  // 0: up to n - 1

    // fit
    std::string input_path;
    std::string fit_kind;  // row filter when the input has a kind column
    double p_c = 0.0;

    Format format = Format::Csv;
    std::string output_path;  // empty: stdout
    unsigned workers = 0;     // 0: QORRELATE_WORKERS or hardware concurrency
    bool check = false;
};

// Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 a --check
// assertion failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Shortest round-trip decimal representation.
std::string format_number(double value);

// Parses "c,d-bwd" or "all".
std::vector<MeasureKind> parse_measure_list(const std::string& text);

// One amplitude per line as "re im" (or just "re"); blank lines and lines
// starting with '#' are skipped. The vector is normalized.
PureState read_amplitude_file(const std::string& path);

}  // namespace qorrelate::cli
