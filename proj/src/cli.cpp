#include "fmea/cli.hpp"

#include "fmea/analysis.hpp"
#include "fmea/ingest.hpp"
#include "fmea/report.hpp"
#include "fmea/simulate.hpp"
#include "fmea/worksheet.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

namespace fmea::cli {

namespace {

// Raised for unreadable or invalid input; maps to exit status 1.
struct DataError {
    std::vector<std::string> messages;
};

// Raised for bad flag values detected after CLI11 parsing; exit status 2.
struct UsageError {
    std::string message;
};

std::string read_stream(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Worksheet load(const std::string& path, std::istream& in) {
    ParseResult result;
    if (path == "-") {
        result = parse_csv(read_stream(in));
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file) {
            throw DataError{{"cannot read \"" + path + "\""}};
        }
        const std::string bytes = read_stream(file);
        const auto dot = path.rfind('.');
        std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        std::ranges::transform(ext, ext.begin(),
                               [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == "csv") {
            result = parse_csv(bytes);
        } else if (ext == "json") {
            result = parse_json(bytes);
        } else {
            throw DataError{{"\"" + path + "\": unknown worksheet format (expected .csv or .json)"}};
        }
    }
    if (auto* errors = std::get_if<std::vector<ParseError>>(&result)) {
        DataError failure;
        for (const auto& e : *errors) {
            failure.messages.push_back(path + ": " + describe(e));
        }
        throw failure;
    }
    auto ws = std::get<Worksheet>(std::move(result));
    if (const auto violations = validate_worksheet(ws); !violations.empty()) {
        DataError failure;
        for (const auto& v : violations) {
            failure.messages.push_back(path + ": " + describe(v));
        }
        throw failure;
    }
    return ws;
}

ClassBands parse_bands(const std::string& text) {
    std::vector<int> cuts;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        const auto token = rest.substr(0, comma);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw UsageError{"--bands: \"" + std::string(token) + "\" is not an integer"};
        }
        cuts.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    if (cuts.size() != 3) {
        throw UsageError{"--bands expects three cut points b1,b2,b3"};
    }
    try {
        return ClassBands{cuts[0], cuts[1], cuts[2]};
    } catch (const std::invalid_argument& e) {
        throw UsageError{std::string("--bands: ") + e.what()};
    }
}

Format format_from_flag(const std::string& flag) {
    if (flag == "md" || flag == "markdown") {
        return Format::Markdown;
    }
    if (flag == "csv") {
        return Format::Csv;
    }
    if (flag == "json") {
        return Format::Json;
    }
    if (flag == "svg") {
        return Format::Svg;
    }
    return Format::Text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Classical FMEA risk analysis: validate, rank, matrix, report, simulate",
                 "fmea"};
    app.require_subcommand(1);

    std::string file;
    std::string bands_flag = "100,200,500";
    std::string format_flag;
    std::string axes_flag;
    std::string scale_flag;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    int single_rating = 0;
    unsigned threads = 1;

    auto* validate = app.add_subcommand("validate", "Parse and validate a worksheet");
    validate->add_option("file", file, "Worksheet (.csv, .json, or - for CSV on stdin)")
        ->required();

    auto* analyze = app.add_subcommand("analyze", "Rank failure modes by RPN");
    analyze->add_option("file", file, "Worksheet (.csv, .json, or - for CSV on stdin)")
        ->required();
    analyze->add_option("--bands", bands_flag, "Class cut points b1,b2,b3")
        ->capture_default_str();
    analyze->add_option("--format", format_flag, "md, csv or json")
        ->check(CLI::IsMember({"md", "csv", "json"}))
        ->default_str("md");

    auto* matrix = app.add_subcommand("matrix", "Build a 10x10 risk matrix");
    matrix->add_option("file", file, "Worksheet (.csv, .json, or - for CSV on stdin)")
        ->required();
    matrix->add_option("--axes", axes_flag, "s-d (severity vs detection) or s-o")
        ->check(CLI::IsMember({"s-d", "s-o"}))
        ->required();
    matrix->add_option("--format", format_flag, "text, csv or svg")
        ->check(CLI::IsMember({"text", "csv", "svg"}))
        ->default_str("text");

    auto* report = app.add_subcommand("report", "Full per-entry FMEA report (Markdown)");
    report->add_option("file", file, "Worksheet (.csv, .json, or - for CSV on stdin)")
        ->required();
    report->add_option("--bands", bands_flag, "Class cut points b1,b2,b3")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo check of occurrence ratings");
    simulate->add_option("file", file, "Worksheet (.csv, .json, or - for CSV on stdin)");
    simulate->add_option("--trials", trials, "Failure opportunities per entry")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--seed", seed, "Base seed")->capture_default_str();
    auto* rating_opt = simulate->add_option("--rating", single_rating,
                                            "Simulate a single occurrence rating instead")
                           ->check(CLI::Range(1, 10));
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    simulate->add_option("--format", format_flag, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->default_str("text");

    auto* dataset = app.add_subcommand("dataset", "Print the bundled microgrid worksheet");
    dataset->add_option("--format", format_flag, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str("csv");

    auto* scales = app.add_subcommand("scales", "Print the 1-10 rating scales as CSV");
    scales->add_option("--scale", scale_flag, "s, o or d (default: all)")
        ->check(CLI::IsMember({"s", "o", "d"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "fmea: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    std::ostringstream payload;
    try {
        auto format_or = [&](std::string_view fallback) {
            return format_from_flag(format_flag.empty() ? std::string(fallback) : format_flag);
        };
        if (validate->parsed()) {
            const auto ws = load(file, in);
            payload << file << ": valid, " << ws.entries.size() << " entries\n";
        } else if (analyze->parsed()) {
            const auto bands = parse_bands(bands_flag);
            payload << render_analysis(load(file, in), bands, format_or("md"));
        } else if (matrix->parsed()) {
            const auto axes = axes_flag == "s-d" ? MatrixAxes::SeverityVsDetection
                                                 : MatrixAxes::SeverityVsOccurrence;
            payload << render_matrix(risk_matrix(load(file, in), axes), format_or("text"));
        } else if (report->parsed()) {
            const auto bands = parse_bands(bands_flag);
            const auto ws = load(file, in);
            payload << render_fmea_report(ws, rank(ws, bands));
        } else if (simulate->parsed()) {
            const SimConfig cfg{trials, seed};
            if (rating_opt->count() > 0) {
                if (!file.empty()) {
                    throw UsageError{"simulate takes either a worksheet or --rating, not both"};
                }
                const SimResult r = simulate_occurrence(Rating{single_rating}, cfg);
                payload << render_simulation({&r, 1}, nullptr, format_or("text"));
            } else {
                if (file.empty()) {
                    throw UsageError{"simulate needs a worksheet file or --rating"};
                }
                const auto ws = load(file, in);
                const auto results = simulate_worksheet(ws, cfg, threads);
                payload << render_simulation(results, &ws, format_or("text"));
            }
        } else if (dataset->parsed()) {
            payload << (format_flag == "json" ? emit_json(paper_fixture())
                                              : emit_csv(paper_fixture()));
        } else if (scales->parsed()) {
            std::optional<ScaleKind> kind;
            if (scale_flag == "s") {
                kind = ScaleKind::Severity;
            } else if (scale_flag == "o") {
                kind = ScaleKind::Occurrence;
            } else if (scale_flag == "d") {
                kind = ScaleKind::Detection;
            }
            payload << render_scales(kind);
        }
    } catch (const UsageError& e) {
        err << "fmea: " << e.message << "\n";
        return kUsageError;
    } catch (const DataError& e) {
        for (const auto& m : e.messages) {
            err << m << "\n";
        }
        return kDataFailure;
    } catch (const std::exception& e) {
        err << "fmea: " << e.what() << "\n";
        return kDataFailure;
    }
    out << payload.str();
    return kSuccess;
}

}  // namespace fmea::cli
