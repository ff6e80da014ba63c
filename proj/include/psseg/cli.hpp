#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psseg/evolve.hpp"
#include "psseg/lbf.hpp"
#include "psseg/regularize.hpp"

namespace psseg::cli {

enum class Method { Ours, Lbf };

struct RunConfig {
    std::string input;
    Method method = Method::Ours;
    ContourSpec init = CircleContour{};
    Params params;
    LbfParams lbf;
    std::string overlay_path;  ///< empty: no overlay
    std::string metrics_path;  ///< empty: no metrics file
    bool benchmark = false;
};

/// Thrown for malformed command lines; main() maps it to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// "circle:CX,CY,R", "rect:X0,Y0,X1,Y1" or "mask:PATH".
ContourSpec parse_contour(std::string_view text);

using MetricsRow = IterationMetrics;

/// CSV "iter,sign_change_frac,convolutions,wall_ms", LF line endings,
/// shortest round-trip decimal formatting.
void write_metrics(const std::vector<MetricsRow>& rows, const std::string& path);
std::vector<MetricsRow> read_metrics(const std::string& path);

struct MethodReport {
    long iterations = 0;
    double total_seconds = 0.0;
    double seconds_per_iter = 0.0;
    std::size_t convolutions = 0;
};

struct BenchmarkReport {
    MethodReport ours;
    MethodReport lbf;
    double dice_between = 0.0;
    RunResult ours_run;
    RunResult lbf_run;
};

/// Runs both solvers sequentially on the same image, contour and parameters.
BenchmarkReport benchmark(const ScalarField& image, const ContourSpec& init, const Params& params,
                          const LbfParams& lp);

void print_report(const BenchmarkReport& report, std::ostream& out);

/// Full command-line entry point. Returns 0 on success, 2 on usage errors,
/// 1 on runtime errors.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psseg::cli
