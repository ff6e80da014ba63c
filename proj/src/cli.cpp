#include "psseg/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <system_error>

#include "psseg/errors.hpp"
#include "psseg/image_io.hpp"

namespace psseg::cli {

namespace {

std::vector<double> parse_numbers(std::string_view text, std::size_t expected,
                                  std::string_view what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view token = text.substr(start, comma - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
            throw UsageError("malformed number '" + std::string(token) + "' in " +
                             std::string(what));
        }
        values.push_back(v);
        start = comma + 1;
    }
    if (values.size() != expected) {
        throw UsageError(std::string(what) + " expects " + std::to_string(expected) +
                         " comma-separated values");
    }
    return values;
}

int as_pixel(double v, std::string_view what) {
    if (v != std::floor(v)) {
        throw UsageError(std::string(what) + " coordinates must be integers");
    }
    return static_cast<int>(v);
}

template <class T>
std::string shortest(T value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

template <class T>
T parse_field(std::string_view token, const std::string& path, std::size_t line) {
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw FormatError(path + ":" + std::to_string(line) + ": malformed metrics field '" +
                          std::string(token) + "'");
    }
    return value;
}

constexpr const char* kMetricsHeader = "iter,sign_change_frac,convolutions,wall_ms";

MethodReport summarize(const RunResult& r) {
    MethodReport m;
    m.iterations = r.iterations;
    m.total_seconds = r.total_wall_ms / 1000.0;
    m.seconds_per_iter = r.iterations > 0 ? m.total_seconds / static_cast<double>(r.iterations)
                                          : 0.0;
    m.convolutions = r.total_convolutions;
    return m;
}

void write_outputs(const RunConfig& cfg, const ScalarField& image, const RunResult& r) {
    if (!cfg.overlay_path.empty()) save_overlay(image, r.initial_mask, r.mask, cfg.overlay_path);
    if (!cfg.metrics_path.empty()) write_metrics(r.rows, cfg.metrics_path);
}

}  // namespace

ContourSpec parse_contour(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw UsageError("--init expects circle:CX,CY,R | rect:X0,Y0,X1,Y1 | mask:PATH");
    }
    const std::string_view kind = text.substr(0, colon);
    const std::string_view rest = text.substr(colon + 1);
    if (kind == "circle") {
        const auto v = parse_numbers(rest, 3, "circle");
        return CircleContour{v[0], v[1], v[2]};
    }
    if (kind == "rect") {
        const auto v = parse_numbers(rest, 4, "rect");
        return RectContour{as_pixel(v[0], "rect"), as_pixel(v[1], "rect"),
                           as_pixel(v[2], "rect"), as_pixel(v[3], "rect")};
    }
    if (kind == "mask") {
        if (rest.empty()) throw UsageError("mask: needs a path");
        return MaskContour{std::string(rest)};
    }
    throw UsageError("unknown contour kind '" + std::string(kind) + "'");
}

void write_metrics(const std::vector<MetricsRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << kMetricsHeader << '\n';
    for (const MetricsRow& row : rows) {
        out << row.iteration << ',' << shortest(row.sign_change_frac) << ',' << row.convolutions
            << ',' << shortest(row.wall_ms) << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

std::vector<MetricsRow> read_metrics(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader) {
        throw FormatError(path + ": missing metrics header");
    }
    std::vector<MetricsRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos;) {
            fields.push_back(rest.substr(0, comma));
            rest.remove_prefix(comma + 1);
        }
        fields.push_back(rest);
        if (fields.size() != 4) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": expected 4 fields");
        }
        rows.push_back({parse_field<long>(fields[0], path, line_no),
                        parse_field<double>(fields[1], path, line_no),
                        parse_field<std::size_t>(fields[2], path, line_no),
                        parse_field<double>(fields[3], path, line_no)});
    }
    return rows;
}

BenchmarkReport benchmark(const ScalarField& image, const ContourSpec& init, const Params& params,
                          const LbfParams& lp) {
    BenchmarkReport report;
    report.ours_run = run(image, init, params);
    report.lbf_run = lbf_run(image, init, params, lp);
    report.ours = summarize(report.ours_run);
    report.lbf = summarize(report.lbf_run);
    report.dice_between = dice(report.ours_run.mask, report.lbf_run.mask);
    return report;
}

void print_report(const BenchmarkReport& report, std::ostream& out) {
    std::ostringstream s;
    s << std::fixed;
    s << "method  iterations  total_s     s_per_iter   convolutions\n";
    auto line = [&](const char* name, const MethodReport& m) {
        s << std::left << std::setw(8) << name << std::right << std::setw(10) << m.iterations
          << "  " << std::setprecision(4) << std::setw(9) << m.total_seconds << "  "
          << std::setprecision(7) << std::setw(11) << m.seconds_per_iter << "  " << std::setw(12)
          << m.convolutions << '\n';
    };
    line("ours", report.ours);
    line("lbf", report.lbf);
    s << std::setprecision(4);
    if (report.ours.seconds_per_iter > 0.0) {
        s << "per-iteration speedup (lbf/ours): "
          << report.lbf.seconds_per_iter / report.ours.seconds_per_iter << '\n';
    }
    if (report.ours.total_seconds > 0.0) {
        s << "total-time speedup (lbf/ours):    "
          << report.lbf.total_seconds / report.ours.total_seconds << '\n';
    }
    s << "dice(ours, lbf): " << report.dice_between << '\n';
    s << "note: absolute seconds depend on hardware and platform; only the ordering and\n"
         "      ratios between the methods are meaningful.\n";
    out << s.str();
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string method = "ours";
    std::string init_text;
    bool allow_t = false;
    Params& p = cfg.params;

    CLI::App app{"Level-set segmentation with closed-form piecewise-smooth fitting"};
    app.option_defaults()->always_capture_default();
    app.add_option("--input", cfg.input, "Input image (PGM P5 or grayscale PNG)")->required();
    app.add_option("--method", method, "Solver")->check(CLI::IsMember({"ours", "lbf"}));
    app.add_option("--init", init_text,
                   "Initial contour: circle:CX,CY,R | rect:X0,Y0,X1,Y1 | mask:PATH "
                   "(default: centered circle, radius min(w,h)/4)");
    app.add_option("--t", p.t, "Gaussian kernel scale, in [1,2]");
    app.add_flag("--allow-t-out-of-range", allow_t, "Accept --t outside [1,2]");
    app.add_option("--alpha", p.alpha, "Distance-regularization weight");
    app.add_option("--nu", p.nu, "Curvature (length) weight");
    app.add_option("--mu", p.mu, "Fitting-gradient weight");
    app.add_option("--dt", p.dt, "Time step");
    app.add_option("--epsilon", p.epsilon, "Heaviside/Dirac width");
    app.add_option("--c0", p.c0, "Initial level-set magnitude");
    app.add_option("--max-iters", p.max_iters, "Iteration cap");
    app.add_option("--tol", p.tol, "Sign-change fraction regarded as stable");
    app.add_option("--patience", p.patience, "Stable iterations required to stop");
    app.add_option("--lambda1", cfg.lbf.lambda1, "LBF inside weight");
    app.add_option("--lambda2", cfg.lbf.lambda2, "LBF outside weight");
    app.add_option("--out", cfg.overlay_path, "Overlay image (.png or .ppm)");
    app.add_option("--metrics", cfg.metrics_path, "Per-iteration metrics CSV");
    app.add_flag("--benchmark", cfg.benchmark, "Run both solvers and compare");

    try {
        app.parse(argc, argv);
        cfg.method = method == "lbf" ? Method::Lbf : Method::Ours;
        if (!allow_t && (p.t < 1.0 || p.t > 2.0)) {
            throw UsageError("--t must lie in [1,2] (pass --allow-t-out-of-range to override)");
        }
        try {
            p.validate();
            cfg.lbf.validate();
        } catch (const ParameterError& e) {
            throw UsageError(e.what());
        }
        if (!init_text.empty()) cfg.init = parse_contour(init_text);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        const ScalarField image = load_image(cfg.input);
        if (init_text.empty()) {
            cfg.init = CircleContour{(image.width() - 1) / 2.0, (image.height() - 1) / 2.0,
                                     std::min(image.width(), image.height()) / 4.0};
        }

        if (cfg.benchmark) {
            BenchmarkReport report = benchmark(image, cfg.init, p, cfg.lbf);
            print_report(report, out);
            write_outputs(cfg, image,
                          cfg.method == Method::Lbf ? report.lbf_run : report.ours_run);
            return 0;
        }

        const RunResult result = cfg.method == Method::Lbf ? lbf_run(image, cfg.init, p, cfg.lbf)
                                                           : run(image, cfg.init, p);
        write_outputs(cfg, image, result);
        out << "method: " << method << "\niterations: " << result.iterations
            << "\nconvolutions: " << result.total_convolutions
            << "\nwall_ms: " << result.total_wall_ms
            << "\ninside_pixels: " << result.mask.count() << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace psseg::cli
