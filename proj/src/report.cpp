#include "fmea/report.hpp"

#include "fmea/ingest.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"

namespace fmea {

namespace {

using Row = std::vector<std::string>;

enum class Align { Left, Right };

std::size_t display_width(std::string_view s) {
    return static_cast<std::size_t>(std::ranges::count_if(
        s, [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string md_cell(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n' || c == '\r') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::string markdown_table(const Row& header, const std::vector<Align>& align,
                           const std::vector<Row>& rows) {
    std::string out = "|";
    for (const auto& h : header) {
        out += " " + md_cell(h) + " |";
    }
    out += "\n|";
    for (auto a : align) {
        out += a == Align::Right ? "---:|" : "---|";
    }
    out += '\n';
    for (const auto& row : rows) {
        out += '|';
        for (const auto& cell : row) {
            out += " " + md_cell(cell) + " |";
        }
        out += '\n';
    }
    return out;
}

std::string csv_table(const Row& header, const std::vector<Row>& rows) {
    std::string out;
    auto line = [&](const Row& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_field(row[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& row : rows) {
        line(row);
    }
    return out;
}

std::string text_table(const Row& header, const std::vector<Align>& align,
                       const std::vector<Row>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = display_width(header[c]);
        for (const auto& row : rows) {
            width[c] = std::max(width[c], display_width(row[c]));
        }
    }
    std::string out;
    auto line = [&](const Row& row) {
        std::string text;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string pad(width[c] - display_width(row[c]), ' ');
            if (c) {
                text += "  ";
            }
            text += align[c] == Align::Right ? pad + row[c] : row[c] + pad;
        }
        text.erase(text.find_last_not_of(' ') + 1);
        out += text + '\n';
    };
    line(header);
    Row rule;
    for (auto w : width) {
        rule.emplace_back(w, '-');
    }
    line(rule);
    for (const auto& row : rows) {
        line(row);
    }
    return out;
}

std::string declared_text(const std::optional<ClassLabel>& label) {
    return label ? std::string(to_string(*label)) : std::string("-");
}

std::string triple_text(const RatingTriple& t) {
    return fmt::format("({},{},{})", t.severity, t.occurrence, t.detection);
}

std::string rate_text(double rate) { return fmt::format("{:.6e}", rate); }

constexpr std::array<ClassLabel, 4> kLabelsDescending{
    ClassLabel::Catastrophic, ClassLabel::Critical, ClassLabel::Marginal, ClassLabel::Negligible};

std::string class_counts_text(const ClassCounts& counts) {
    std::string out;
    for (auto label : kLabelsDescending) {
        out += fmt::format("{}{} {}", out.empty() ? "" : ", ", to_string(label),
                           counts[static_cast<std::size_t>(label)]);
    }
    return out;
}

}  // namespace

std::string_view to_string(Format format) noexcept {
    switch (format) {
        case Format::Markdown:
            return "markdown";
        case Format::Csv:
            return "csv";
        case Format::Text:
            return "text";
        case Format::Svg:
            return "svg";
        case Format::Json:
            break;
    }
    return "json";
}

UnsupportedFormat::UnsupportedFormat(std::string_view what, Format format)
    : std::invalid_argument(fmt::format("{} cannot be rendered as {}", what, to_string(format))) {}

std::string render_ranked(std::span<const RpnResult> results, const Worksheet& ws,
                          const RenderOptions& opts) {
    Row header{"Rank", "Component", "Failure Mode", "S",   "O",
               "D",    "RPN",       "Computed Class", "Declared Class", "Discrepancy"};
    std::vector<Align> align{Align::Right, Align::Left,  Align::Left,  Align::Right, Align::Right,
                             Align::Right, Align::Right, Align::Left, Align::Left,  Align::Left};
    if (opts.include_narratives) {
        for (const char* name : {"Effect", "End Effect", "Cause", "Prevention Controls",
                                 "Detection Controls"}) {
            header.emplace_back(name);
            align.push_back(Align::Left);
        }
    }
    std::vector<Row> rows;
    rows.reserve(results.size());
    for (const auto& r : results) {
        const auto& e = ws.entries.at(r.entry_index);
        Row row{std::to_string(r.rank),
                e.component,
                e.failure_mode,
                std::to_string(e.triple.severity),
                std::to_string(e.triple.occurrence),
                std::to_string(e.triple.detection),
                std::to_string(r.rpn.value()),
                std::string(to_string(r.computed_class)),
                declared_text(r.declared_class),
                r.discrepancy ? "yes" : "no"};
        if (opts.include_narratives) {
            row.insert(row.end(), {e.effect, e.end_effect, e.cause, e.prevention_controls,
                                   e.detection_controls});
        }
        rows.push_back(std::move(row));
    }
    switch (opts.format) {
        case Format::Markdown:
            return markdown_table(header, align, rows);
        case Format::Csv:
            return csv_table(header, rows);
        case Format::Text:
            return text_table(header, align, rows);
        default:
            throw UnsupportedFormat("ranked results", opts.format);
    }
}

std::string render_fmea_report(const Worksheet& ws, std::span<const RpnResult> results) {
    std::string out = ws.title.empty() ? "# FMEA report\n" : "# FMEA report: " + ws.title + "\n";
    for (const auto& r : results) {
        const auto& e = ws.entries.at(r.entry_index);
        const auto& t = e.triple;
        std::string classification = fmt::format("{} (computed)", to_string(r.computed_class));
        if (r.declared_class) {
            classification = fmt::format("{} (declared); {}", to_string(*r.declared_class),
                                         classification);
        }
        const std::vector<Row> rows{
            {"Failure mode", e.failure_mode},
            {"Severity (S)",
             fmt::format("{} ({})", t.severity, severity_label(Rating{t.severity}).label)},
            {"Effect", e.effect},
            {"End effect", e.end_effect},
            {"Cause", e.cause},
            {"Classification", classification},
            {"Occurrence (O)",
             fmt::format("{} ({}, {})", t.occurrence, occurrence_label(Rating{t.occurrence}).label,
                         occurrence_label(Rating{t.occurrence}).criteria)},
            {"Prevention controls", e.prevention_controls},
            {"Detection controls", e.detection_controls},
            {"Detection (D)",
             fmt::format("{} ({})", t.detection, detection_label(Rating{t.detection}).label)},
            {"RPN", std::to_string(r.rpn.value())},
        };
        out += fmt::format("\n## {}. {}\n\n", r.rank, md_cell(e.component));
        out += markdown_table({"Field", "Value"}, {Align::Left, Align::Left}, rows);
    }
    return out;
}

std::string render_matrix_text(const RiskMatrix& matrix) {
    const std::string second(second_axis_name(matrix.axes));
    const std::string corner = "Severity\\" + second;
    std::string out =
        fmt::format("Risk matrix: Severity (rows) vs {} (columns)\n\n{}", second, corner);
    for (int c = 1; c <= 10; ++c) {
        out += fmt::format("{:>4}", c);
    }
    out += '\n';
    for (int s = 10; s >= 1; --s) {
        out += fmt::format("{:>{}}", s, corner.size());
        for (int c = 1; c <= 10; ++c) {
            const auto count = matrix.at(s, c).count;
            out += count == 0 ? fmt::format("{:>4}", ".") : fmt::format("{:>4}", count);
        }
        out += '\n';
    }
    return out;
}

std::string render_matrix_csv(const RiskMatrix& matrix) {
    std::string out = "severity\\" + std::string(second_axis_name(matrix.axes));
    for (int c = 1; c <= 10; ++c) {
        out += fmt::format(",{}", c);
    }
    out += '\n';
    for (int s = 10; s >= 1; --s) {
        out += std::to_string(s);
        for (int c = 1; c <= 10; ++c) {
            out += fmt::format(",{}", matrix.at(s, c).count);
        }
        out += '\n';
    }
    return out;
}

std::string render_matrix_svg(const RiskMatrix& matrix) {
    constexpr int kCell = 40;
    constexpr int kLeft = 80;
    constexpr int kTop = 50;
    constexpr int kWidth = kLeft + 10 * kCell + 20;
    constexpr int kHeight = kTop + 10 * kCell + 60;
    // Ramp from white to firebrick.
    constexpr std::array<int, 3> kHue{178, 34, 34};

    const std::string second(second_axis_name(matrix.axes));
    const std::string_view second_attr =
        matrix.axes == MatrixAxes::SeverityVsDetection ? "detection" : "occurrence";
    const auto max_count = matrix.max_count();
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\">\n",
        kWidth, kHeight);
    out += fmt::format(
        "  <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">Risk matrix "
        "(Severity vs {})</text>\n",
        kLeft + 5 * kCell, second);
    for (int s = 10; s >= 1; --s) {
        const int y = kTop + (10 - s) * kCell;
        for (int c = 1; c <= 10; ++c) {
            const int x = kLeft + (c - 1) * kCell;
            const auto count = matrix.at(s, c).count;
            std::array<int, 3> rgb{255, 255, 255};
            if (max_count > 0) {
                const auto n = static_cast<long>(count);
                const auto m = static_cast<long>(max_count);
                for (std::size_t k = 0; k < 3; ++k) {
                    rgb[k] = 255 - static_cast<int>(((255 - kHue[k]) * n * 2 + m) / (2 * m));
                }
            }
            out += fmt::format(
                "  <rect class=\"cell\" data-severity=\"{}\" data-{}=\"{}\" data-count=\"{}\" "
                "x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#{:02x}{:02x}{:02x}\" "
                "stroke=\"#999999\"/>\n",
                s, second_attr, c, count,
                x, y, kCell, kCell, rgb[0], rgb[1], rgb[2]);
            if (count > 0) {
                const bool dark = count * 2 > max_count;
                out += fmt::format(
                    "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\" "
                    "fill=\"{}\">{}</text>\n",
                    x + kCell / 2, y + kCell / 2 + 5, dark ? "#ffffff" : "#000000", count);
            }
        }
        out += fmt::format(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"12\">{}</text>\n",
            kLeft - 8, y + kCell / 2 + 4, s);
    }
    for (int c = 1; c <= 10; ++c) {
        out += fmt::format(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
            kLeft + (c - 1) * kCell + kCell / 2, kTop + 10 * kCell + 18, c);
    }
    out += fmt::format(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        kLeft + 5 * kCell, kTop + 10 * kCell + 44, second);
    out += fmt::format(
        "  <text x=\"20\" y=\"{0}\" text-anchor=\"middle\" font-size=\"14\" "
        "transform=\"rotate(-90 20 {0})\">Severity</text>\n",
        kTop + 5 * kCell);
    out += "</svg>\n";
    return out;
}

std::string render_matrix(const RiskMatrix& matrix, Format format) {
    switch (format) {
        case Format::Text:
            return render_matrix_text(matrix);
        case Format::Csv:
            return render_matrix_csv(matrix);
        case Format::Svg:
            return render_matrix_svg(matrix);
        default:
            throw UnsupportedFormat("risk matrix", format);
    }
}

std::string render_analysis(const Worksheet& ws, const ClassBands& bands, Format format) {
    const auto ranked = rank(ws, bands);
    const auto groups = collisions(ws);
    const auto flagged = discrepancies(ws, bands);
    const auto summary = summary_stats(ws, bands);
    const auto& cuts = bands.thresholds();

    auto member_text = [&](std::size_t i) {
        const auto& e = ws.entries[i];
        return e.component + " " + triple_text(e.triple);
    };
    auto discrepancy_rows = [&] {
        std::vector<Row> rows;
        for (const auto& r : flagged) {
            const auto& e = ws.entries[r.entry_index];
            rows.push_back({std::to_string(r.rank), e.component, e.failure_mode,
                            std::to_string(r.rpn.value()), std::string(to_string(r.computed_class)),
                            declared_text(r.declared_class)});
        }
        return rows;
    };
    const Row discrepancy_header{"Rank",           "Component",     "Failure Mode", "RPN",
                                 "Computed Class", "Declared Class"};

    if (format == Format::Json) {
        using ordered_json = nlohmann::ordered_json;
        ordered_json doc;
        doc["bands"] = {cuts[0], cuts[1], cuts[2]};
        auto result_json = [&](const RpnResult& r) {
            const auto& e = ws.entries[r.entry_index];
            ordered_json j;
            j["rank"] = r.rank;
            j["component"] = e.component;
            j["failure_mode"] = e.failure_mode;
            j["severity"] = e.triple.severity;
            j["occurrence"] = e.triple.occurrence;
            j["detection"] = e.triple.detection;
            j["rpn"] = r.rpn.value();
            j["computed_class"] = to_string(r.computed_class);
            j["declared_class"] =
                r.declared_class ? ordered_json(to_string(*r.declared_class)) : ordered_json();
            j["discrepancy"] = r.discrepancy;
            return j;
        };
        doc["results"] = ordered_json::array();
        for (const auto& r : ranked) {
            doc["results"].push_back(result_json(r));
        }
        doc["collisions"] = ordered_json::array();
        for (const auto& g : groups) {
            ordered_json members = ordered_json::array();
            for (auto i : g.members) {
                const auto& e = ws.entries[i];
                members.push_back({{"component", e.component},
                                   {"failure_mode", e.failure_mode},
                                   {"severity", e.triple.severity},
                                   {"occurrence", e.triple.occurrence},
                                   {"detection", e.triple.detection}});
            }
            doc["collisions"].push_back({{"rpn", g.rpn.value()}, {"members", members}});
        }
        doc["discrepancies"] = ordered_json::array();
        for (const auto& r : flagged) {
            doc["discrepancies"].push_back(result_json(r));
        }
        ordered_json s;
        s["count"] = summary.count;
        if (summary.stats) {
            s["min_rpn"] = summary.stats->min;
            s["max_rpn"] = summary.stats->max;
            s["rpn_sum"] = summary.stats->sum;
            s["mean_rpn"] = summary.stats->mean(summary.count);
        }
        ordered_json computed;
        ordered_json declared;
        for (auto label : kLabelsDescending) {
            computed[std::string(to_string(label))] = summary.computed[static_cast<std::size_t>(label)];
            declared[std::string(to_string(label))] = summary.declared[static_cast<std::size_t>(label)];
        }
        declared["undeclared"] = summary.undeclared;
        s["computed_classes"] = computed;
        s["declared_classes"] = declared;
        doc["summary"] = s;
        return doc.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
    }

    if (format == Format::Csv) {
        std::string out = fmt::format("# bands,{},{},{}\n", cuts[0], cuts[1], cuts[2]);
        out += render_ranked(ranked, ws, {Format::Csv, false});
        out += "\n# collisions\n";
        std::vector<Row> rows;
        for (const auto& g : groups) {
            std::string members;
            for (auto i : g.members) {
                members += (members.empty() ? "" : "; ") + member_text(i);
            }
            rows.push_back({std::to_string(g.rpn.value()), std::to_string(g.members.size()),
                            members});
        }
        out += csv_table({"RPN", "Count", "Members"}, rows);
        out += "\n# discrepancies\n";
        out += csv_table(discrepancy_header, discrepancy_rows());
        out += "\n# summary\n";
        std::vector<Row> stats{{"Entries", std::to_string(summary.count)}};
        if (summary.stats) {
            stats.push_back({"Min RPN", std::to_string(summary.stats->min)});
            stats.push_back({"Max RPN", std::to_string(summary.stats->max)});
            stats.push_back({"Mean RPN", summary.stats->mean_fixed2(summary.count)});
        }
        stats.push_back({"Computed classes", class_counts_text(summary.computed)});
        stats.push_back({"Declared classes", class_counts_text(summary.declared) +
                                                 fmt::format(", undeclared {}", summary.undeclared)});
        out += csv_table({"Metric", "Value"}, stats);
        return out;
    }

    if (format != Format::Markdown) {
        throw UnsupportedFormat("analysis", format);
    }
    std::string out = "# FMEA analysis\n\n";
    out += fmt::format("Class bands ({},{},{}): {}\n", cuts[0], cuts[1], cuts[2], describe(bands));
    out += "\n## Ranked failure modes\n\n";
    out += render_ranked(ranked, ws, {Format::Markdown, false});
    out += "\n## RPN collisions\n\n";
    if (groups.empty()) {
        out += "None.\n";
    } else {
        std::vector<Row> rows;
        for (const auto& g : groups) {
            std::string members;
            for (auto i : g.members) {
                members += (members.empty() ? "" : "; ") + member_text(i);
            }
            rows.push_back({std::to_string(g.rpn.value()), std::to_string(g.members.size()),
                            members});
        }
        out += markdown_table({"RPN", "Count", "Members (S,O,D)"},
                              {Align::Right, Align::Right, Align::Left}, rows);
    }
    out += "\n## Classification discrepancies\n\n";
    if (flagged.empty()) {
        out += "None.\n";
    } else {
        out += markdown_table(discrepancy_header,
                              {Align::Right, Align::Left, Align::Left, Align::Right, Align::Left,
                               Align::Left},
                              discrepancy_rows());
    }
    out += "\n## Summary\n\n";
    std::vector<Row> stats{{"Entries", std::to_string(summary.count)}};
    if (summary.stats) {
        stats.push_back({"Min RPN", std::to_string(summary.stats->min)});
        stats.push_back({"Max RPN", std::to_string(summary.stats->max)});
        stats.push_back({"Mean RPN", summary.stats->mean_fixed2(summary.count)});
    }
    stats.push_back({"Computed classes", class_counts_text(summary.computed)});
    stats.push_back({"Declared classes", class_counts_text(summary.declared) +
                                             fmt::format(", undeclared {}", summary.undeclared)});
    out += markdown_table({"Metric", "Value"}, {Align::Left, Align::Left}, stats);
    return out;
}

std::string render_simulation(std::span<const SimResult> results, const Worksheet* ws,
                              Format format) {
    Row header{"rating_in", "trials", "failures", "empirical_rate", "rating_out", "agrees"};
    std::vector<Align> align(header.size(), Align::Right);
    if (ws != nullptr) {
        header.insert(header.begin(), "component");
        align.insert(align.begin(), Align::Left);
    }
    std::vector<Row> rows;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        Row row{std::to_string(r.rating_in.value()), std::to_string(r.trials),
                std::to_string(r.failures),          rate_text(r.empirical_rate),
                std::to_string(r.rating_out.value()), r.agrees ? "yes" : "no"};
        if (ws != nullptr) {
            row.insert(row.begin(), ws->entries.at(i).component);
        }
        rows.push_back(std::move(row));
    }
    switch (format) {
        case Format::Text:
            return text_table(header, align, rows);
        case Format::Csv:
            return csv_table(header, rows);
        case Format::Markdown:
            return markdown_table(header, align, rows);
        default:
            throw UnsupportedFormat("simulation results", format);
    }
}

std::string render_scales(std::optional<ScaleKind> kind) {
    std::vector<Row> rows;
    for (auto k : {ScaleKind::Severity, ScaleKind::Occurrence, ScaleKind::Detection}) {
        if (kind && *kind != k) {
            continue;
        }
        const auto& table = scale(k);
        for (auto it = table.rbegin(); it != table.rend(); ++it) {
            rows.push_back({std::string(scale_name(k)), std::to_string(it->rating),
                            std::string(it->label), std::string(it->criteria)});
        }
    }
    return csv_table({"scale", "rating", "label", "criteria"}, rows);
}

}  // namespace fmea
