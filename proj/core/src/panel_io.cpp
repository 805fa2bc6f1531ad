#include "verdoorn/panel_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace verdoorn {
namespace {

[[noreturn]] void parse_fail(std::string_view source, std::size_t line, const std::string& what) {
    throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line, std::string_view source, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && current.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            was_quoted = false;
        } else {
            current.push_back(c);
        }
    }
    if (quoted) parse_fail(source, line_no, "unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const char* field, std::string_view source, std::size_t line_no) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        parse_fail(source, line_no, std::string("field '") + field + "' is not a number: '" + text + "'");
    }
    return value;
}

int parse_year(const std::string& text, std::string_view source, std::size_t line_no) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        parse_fail(source, line_no, "field 'year' is not an integer: '" + text + "'");
    }
    return value;
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos && s == trim(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string summarize(const std::vector<Defect>& defects) {
    std::ostringstream out;
    out << defects.size() << " defect(s)";
    for (const auto& d : defects) out << "\n  [" << to_string(d.kind) << "] " << d.message;
    return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Defect> defects)
    : Error(ErrorKind::ValidationFailed, summarize(defects)), defects_(std::move(defects)) {}

PanelDataset parse_panel(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<LevelObservation> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;

        auto fields = split_fields(line, source, line_no);
        for (auto& f : fields) f = trim(std::move(f));
        if (!have_header) {
            std::string joined;
            for (std::size_t i = 0; i < fields.size(); ++i) joined += (i ? "," : "") + fields[i];
            if (joined != kPanelHeader) {
                parse_fail(source, line_no, "expected header '" + std::string(kPanelHeader) + "'");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 7) {
            parse_fail(source, line_no, "expected 7 fields, found " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) parse_fail(source, line_no, "empty region");
        if (fields[1].empty()) parse_fail(source, line_no, "empty sector");
        LevelObservation obs;
        obs.region = fields[0];
        obs.sector = fields[1];
        obs.year = parse_year(fields[2], source, line_no);
        obs.gva = parse_number(fields[3], "gva", source, line_no);
        obs.employment = parse_number(fields[4], "employment", source, line_no);
        obs.gfcf = parse_number(fields[5], "gfcf", source, line_no);
        obs.outflow = parse_number(fields[6], "outflow", source, line_no);
        rows.push_back(std::move(obs));
    }
    if (!have_header) parse_fail(source, line_no, "missing header");

    PanelDataset dataset(std::move(rows));
    auto defects = validate(dataset);
    if (!defects.empty()) throw ValidationError(std::move(defects));
    return dataset;
}

PanelDataset parse_panel(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
    return parse_panel(in, path.string());
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_panel(std::ostream& out, const PanelDataset& dataset) {
    out << kPanelHeader << '\n';
    for (const auto& obs : dataset.observations()) {
        out << quote_if_needed(obs.region) << ',' << quote_if_needed(obs.sector) << ',' << obs.year << ','
            << format_double(obs.gva) << ',' << format_double(obs.employment) << ',' << format_double(obs.gfcf)
            << ',' << format_double(obs.outflow) << '\n';
    }
}

void write_panel(const std::filesystem::path& path, const PanelDataset& dataset) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    write_panel(out, dataset);
    if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace verdoorn
