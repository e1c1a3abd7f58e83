#include "fmea/ingest.hpp"

#include "fmea/scales.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <utility>

#include "json.hpp"

namespace fmea {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kRequiredColumns = 5;  // component .. detection

enum Column : std::size_t {
    kComponent,
    kFailureMode,
    kSeverity,
    kOccurrence,
    kDetection,
    kEffect,
    kEndEffect,
    kCause,
    kPrevention,
    kDetectionControls,
    kDeclared,
};

struct CsvRecord {
    std::size_t row = 0;
    std::vector<std::string> fields;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        if (c < 0x80) {
            len = 1;
        } else if ((c >> 5) == 0x6) {
            len = 2;
        } else if ((c >> 4) == 0xE) {
            len = 3;
        } else if ((c >> 3) == 0x1E) {
            len = 4;
        } else {
            return false;
        }
        if (i + len > s.size()) {
            return false;
        }
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) {
                return false;
            }
        }
        i += len;
    }
    return true;
}

ParseError csv_error(std::size_t row, std::string field, std::string message) {
    return {SourceKind::Csv, row, std::nullopt, std::move(field), std::move(message)};
}

// Splits the input into records. Quoted fields may span lines; the record
// number counts records, not physical lines.
std::vector<CsvRecord> tokenize_csv(std::string_view in, std::vector<ParseError>& errors) {
    if (in.starts_with("\xEF\xBB\xBF")) {
        in.remove_prefix(3);
    }
    std::vector<CsvRecord> records;
    CsvRecord current{1, {}};
    std::string field;
    bool quoted = false;        // inside a quoted section
    bool was_quoted = false;    // current field started with a quote
    bool after_quote = false;   // closing quote seen, expecting delimiter
    bool record_broken = false;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
        after_quote = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = current.fields.size() == 1 && current.fields.front().empty();
        if (!blank && !record_broken) {
            records.push_back(std::move(current));
        }
        current = CsvRecord{current.row + 1, {}};
        record_broken = false;
    };

    for (std::size_t i = 0; i < in.size(); ++i) {
        const char c = in[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < in.size() && in[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                    after_quote = true;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == ',') {
            end_field();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < in.size() && in[i + 1] == '\n') {
                ++i;
            }
            end_record();
        } else if (c == '"') {
            if (field.empty() && !was_quoted && !after_quote) {
                quoted = true;
                was_quoted = true;
            } else {
                if (!record_broken) {
                    errors.push_back(csv_error(current.row, {},
                                               "unexpected '\"' inside a field; quote the whole "
                                               "field and double embedded quotes"));
                }
                record_broken = true;
            }
        } else {
            if (after_quote) {
                if (!record_broken) {
                    errors.push_back(
                        csv_error(current.row, {}, "unexpected text after closing quote"));
                }
                record_broken = true;
            }
            field += c;
        }
    }
    if (quoted) {
        errors.push_back(csv_error(current.row, {}, "unterminated quoted field"));
        record_broken = true;
    }
    end_record();
    return records;
}

std::optional<int> parse_int(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        return std::nullopt;
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::string join_rows(const std::vector<std::size_t>& rows) {
    std::string out;
    for (auto r : rows) {
        out += (out.empty() ? "" : ", ") + std::to_string(r);
    }
    return out;
}

// Adds a duplicate-pair error for the entry at `position` if its
// (component, failure_mode) key was seen before.
template <typename MakeError>
void check_unique(std::map<std::pair<std::string, std::string>, std::vector<std::size_t>>& seen,
                  const FmeaEntry& entry, std::size_t position, const char* unit,
                  std::vector<ParseError>& errors, MakeError make_error) {
    auto& rows = seen[{entry.component, entry.failure_mode}];
    rows.push_back(position);
    if (rows.size() > 1) {
        errors.push_back(make_error("duplicate (component, failure_mode) pair (\"" +
                                    entry.component + "\", \"" + entry.failure_mode + "\") at " +
                                    unit + " " + join_rows(rows)));
    }
}

}  // namespace

std::string describe(const ParseError& error) {
    std::string out = error.source == SourceKind::Csv ? "csv" : "json";
    if (error.source == SourceKind::Csv) {
        if (error.row) {
            out += ": row " + std::to_string(*error.row);
        }
        if (!error.field.empty()) {
            out += ", column \"" + error.field + "\"";
        }
    } else if (error.column) {
        out += ": line " + std::to_string(error.row.value_or(0)) + ", column " +
               std::to_string(*error.column);
    } else if (error.row) {
        out += ": entries[" + std::to_string(*error.row) + "]";
        if (!error.field.empty()) {
            out += "." + error.field;
        }
    } else if (!error.field.empty()) {
        out += ": " + error.field;
    }
    return out + ": " + error.message;
}

ParseResult parse_csv(std::string_view bytes, std::string title) {
    std::vector<ParseError> errors;
    auto records = tokenize_csv(bytes, errors);
    if (records.empty() || records.front().row != 1) {
        errors.insert(errors.begin(), csv_error(1, {}, "missing header row"));
        return errors;
    }

    // Header: map column name -> position in the record.
    const auto& header = records.front().fields;
    std::array<std::optional<std::size_t>, kColumns.size()> position;
    std::vector<ParseError> header_errors;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto name = trim(header[i]);
        const auto it = std::ranges::find(kColumns, name);
        if (it == kColumns.end()) {
            header_errors.push_back(
                csv_error(1, std::string(name), "unknown column \"" + std::string(name) + "\""));
            continue;
        }
        auto& slot = position[static_cast<std::size_t>(it - kColumns.begin())];
        if (slot) {
            header_errors.push_back(csv_error(1, std::string(name), "duplicate column"));
        }
        slot = i;
    }
    for (std::size_t c = 0; c < kRequiredColumns; ++c) {
        if (!position[c]) {
            header_errors.push_back(
                csv_error(1, std::string(kColumns[c]), "missing required column"));
        }
    }
    if (!header_errors.empty()) {
        errors.insert(errors.end(), header_errors.begin(), header_errors.end());
        return errors;
    }

    Worksheet ws;
    ws.title = std::move(title);
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> seen;
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto& record = records[r];
        if (record.fields.size() != header.size()) {
            errors.push_back(csv_error(record.row, {},
                                       "expected " + std::to_string(header.size()) +
                                           " fields, found " +
                                           std::to_string(record.fields.size())));
            continue;
        }
        if (!std::ranges::all_of(record.fields, valid_utf8)) {
            errors.push_back(csv_error(record.row, {}, "record is not valid UTF-8"));
            continue;
        }
        auto take = [&](Column c) -> std::string {
            return position[c] ? std::move(record.fields[*position[c]]) : std::string{};
        };

        bool row_ok = true;
        FmeaEntry entry;
        entry.component = take(kComponent);
        entry.failure_mode = take(kFailureMode);
        if (trim(entry.component).empty()) {
            errors.push_back(csv_error(record.row, "component", "component name is empty"));
            row_ok = false;
        }
        for (auto [column, slot] : {std::pair{kSeverity, &entry.triple.severity},
                                    std::pair{kOccurrence, &entry.triple.occurrence},
                                    std::pair{kDetection, &entry.triple.detection}}) {
            const std::string text = take(column);
            const auto value = parse_int(text);
            const std::string name(kColumns[column]);
            if (!value) {
                errors.push_back(
                    csv_error(record.row, name, "\"" + text + "\" is not an integer rating"));
                row_ok = false;
            } else if (!Rating::in_range(*value)) {
                errors.push_back(csv_error(record.row, name,
                                           "rating " + std::to_string(*value) +
                                               " is outside [1, 10]"));
                row_ok = false;
            } else {
                *slot = *value;
            }
        }
        entry.effect = take(kEffect);
        entry.end_effect = take(kEndEffect);
        entry.cause = take(kCause);
        entry.prevention_controls = take(kPrevention);
        entry.detection_controls = take(kDetectionControls);
        const std::string declared = take(kDeclared);
        if (!trim(declared).empty()) {
            entry.declared_classification = parse_class_label(declared);
            if (!entry.declared_classification) {
                errors.push_back(csv_error(record.row, "declared_classification",
                                           "unknown classification \"" + declared + "\""));
                row_ok = false;
            }
        }
        check_unique(seen, entry, record.row, "rows", errors, [&](std::string message) {
            return csv_error(record.row, "component,failure_mode", std::move(message));
        });
        if (row_ok) {
            ws.entries.push_back(std::move(entry));
        }
    }
    if (!errors.empty()) {
        return errors;
    }
    return ws;
}

ParseResult parse_json(std::string_view bytes) {
    std::vector<ParseError> errors;
    ordered_json doc;
    try {
        doc = ordered_json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character.
        const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, bytes.size());
        const auto before = bytes.substr(0, offset);
        const std::size_t line = 1 + static_cast<std::size_t>(std::ranges::count(before, '\n'));
        const auto last_nl = before.rfind('\n');
        const std::size_t column =
            1 + (last_nl == std::string_view::npos ? offset : offset - last_nl - 1);
        std::string message = e.what();
        if (const auto pos = message.find("syntax error"); pos != std::string::npos) {
            message = message.substr(pos);
        }
        errors.push_back({SourceKind::Json, line, column, {}, std::move(message)});
        return errors;
    }

    auto doc_error = [](std::string field, std::string message) {
        return ParseError{SourceKind::Json, std::nullopt, std::nullopt, std::move(field),
                          std::move(message)};
    };
    if (!doc.is_object()) {
        errors.push_back(doc_error({}, "document must be an object with title and entries"));
        return errors;
    }
    Worksheet ws;
    for (const auto& [key, value] : doc.items()) {
        if (key == "title") {
            if (value.is_string()) {
                ws.title = value.get<std::string>();
            } else {
                errors.push_back(doc_error("title", "must be a string"));
            }
        } else if (key != "entries") {
            errors.push_back(doc_error(key, "unknown member"));
        }
    }
    const auto entries = doc.find("entries");
    if (entries == doc.end() || !entries->is_array()) {
        errors.push_back(doc_error("entries", "must be an array of entry objects"));
        return errors;
    }

    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < entries->size(); ++i) {
        const auto& item = (*entries)[i];
        auto entry_error = [&](std::string field, std::string message) {
            return ParseError{SourceKind::Json, i, std::nullopt, std::move(field),
                              std::move(message)};
        };
        if (!item.is_object()) {
            errors.push_back(entry_error({}, "entry must be an object"));
            continue;
        }
        bool entry_ok = true;
        for (const auto& [key, value] : item.items()) {
            if (std::ranges::find(kColumns, key) == kColumns.end()) {
                errors.push_back(entry_error(key, "unknown member"));
                entry_ok = false;
            }
        }
        auto text = [&](Column c, bool required) -> std::string {
            const std::string name(kColumns[c]);
            const auto it = item.find(name);
            if (it == item.end() || it->is_null()) {
                if (required) {
                    errors.push_back(entry_error(name, "missing required member"));
                    entry_ok = false;
                }
                return {};
            }
            if (!it->is_string()) {
                errors.push_back(entry_error(name, "must be a string"));
                entry_ok = false;
                return {};
            }
            return it->get<std::string>();
        };
        auto rating = [&](Column c) -> int {
            const std::string name(kColumns[c]);
            const auto it = item.find(name);
            if (it == item.end()) {
                errors.push_back(entry_error(name, "missing required member"));
            } else if (!it->is_number_integer()) {
                errors.push_back(entry_error(name, it->dump() + " is not an integer rating"));
            } else if (const auto v = it->get<std::int64_t>(); !Rating::in_range(static_cast<int>(v)) ||
                                                               v != static_cast<int>(v)) {
                errors.push_back(
                    entry_error(name, "rating " + std::to_string(v) + " is outside [1, 10]"));
            } else {
                return static_cast<int>(v);
            }
            entry_ok = false;
            return 0;
        };

        FmeaEntry entry;
        entry.component = text(kComponent, true);
        if (item.contains("component") && item["component"].is_string() &&
            trim(entry.component).empty()) {
            errors.push_back(entry_error("component", "component name is empty"));
            entry_ok = false;
        }
        entry.failure_mode = text(kFailureMode, true);
        entry.triple = {rating(kSeverity), rating(kOccurrence), rating(kDetection)};
        entry.effect = text(kEffect, false);
        entry.end_effect = text(kEndEffect, false);
        entry.cause = text(kCause, false);
        entry.prevention_controls = text(kPrevention, false);
        entry.detection_controls = text(kDetectionControls, false);
        const std::string declared = text(kDeclared, false);
        if (!trim(declared).empty()) {
            entry.declared_classification = parse_class_label(declared);
            if (!entry.declared_classification) {
                errors.push_back(entry_error("declared_classification",
                                             "unknown classification \"" + declared + "\""));
                entry_ok = false;
            }
        }
        check_unique(seen, entry, i, "entries", errors, [&](std::string message) {
            return entry_error("component,failure_mode", std::move(message));
        });
        if (entry_ok) {
            ws.entries.push_back(std::move(entry));
        }
    }
    if (!errors.empty()) {
        return errors;
    }
    return ws;
}

std::string emit_json(const Worksheet& ws) {
    ordered_json doc;
    doc["title"] = ws.title;
    doc["entries"] = ordered_json::array();
    for (const auto& e : ws.entries) {
        ordered_json item;
        item["component"] = e.component;
        item["failure_mode"] = e.failure_mode;
        item["severity"] = e.triple.severity;
        item["occurrence"] = e.triple.occurrence;
        item["detection"] = e.triple.detection;
        item["effect"] = e.effect;
        item["end_effect"] = e.end_effect;
        item["cause"] = e.cause;
        item["prevention_controls"] = e.prevention_controls;
        item["detection_controls"] = e.detection_controls;
        if (e.declared_classification) {
            item["declared_classification"] = std::string(to_string(*e.declared_classification));
        } else {
            item["declared_classification"] = nullptr;
        }
        doc["entries"].push_back(std::move(item));
    }
    return doc.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::string csv_field(std::string_view value) {
    const bool needs_quotes =
        value.find_first_of(",\"\r\n") != std::string_view::npos ||
        (!value.empty() && (value.front() == ' ' || value.back() == ' ' ||
                            value.front() == '\t' || value.back() == '\t'));
    if (!needs_quotes) {
        return std::string(value);
    }
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string emit_csv(const Worksheet& ws) {
    std::string out;
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
        out += c ? "," : "";
        out += kColumns[c];
    }
    out += '\n';
    for (const auto& e : ws.entries) {
        const std::string severity = std::to_string(e.triple.severity);
        const std::string occurrence = std::to_string(e.triple.occurrence);
        const std::string detection = std::to_string(e.triple.detection);
        const std::string_view declared =
            e.declared_classification ? to_string(*e.declared_classification) : "";
        const std::array<std::string_view, kColumns.size()> fields{
            e.component,  e.failure_mode,        severity,
            occurrence,   detection,             e.effect,
            e.end_effect, e.cause,               e.prevention_controls,
            e.detection_controls, declared};
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c) {
                out += ',';
            }
            out += csv_field(fields[c]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace fmea
