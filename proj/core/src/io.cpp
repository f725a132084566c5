#include "npselect/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace npselect {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// RFC-4180: fields with comma, quote, or newline are quoted; quotes double.
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// Splits one logical CSV record starting at the stream position; handles
// quoted fields spanning physical lines. Returns false at EOF with no data.
bool read_record(std::istream& in, std::vector<std::string>& fields, int& line_no) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;
    std::string field;
    bool in_quotes = false;
    while (true) {
        if (c == EOF) {
            fields.push_back(field);
            return true;
        }
        if (in_quotes) {
            if (c == '"') {
                const int next = in.peek();
                if (next == '"') {
                    field += '"';
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field += static_cast<char>(c);
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c == '\r') {
            // swallow; handled with the following '\n'
        } else if (c == '\n') {
            ++line_no;
            fields.push_back(field);
            return true;
        } else {
            field += static_cast<char>(c);
        }
        c = in.get();
    }
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::vector<std::string> fields;
    int line_no = 1;
    if (!read_record(in, fields, line_no))
        throw ParseError("empty CSV input", 1);
    table.header = fields;
    int record_line = line_no;
    while (read_record(in, fields, line_no)) {
        if (fields.size() == 1 && fields[0].empty()) {
            record_line = line_no;
            continue;  // trailing blank line
        }
        if (fields.size() != table.header.size())
            throw ParseError("CSV row has " + std::to_string(fields.size()) + " fields, expected "
                                 + std::to_string(table.header.size()),
                             record_line);
        table.rows.push_back(fields);
        record_line = line_no;
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    return read_csv(in);
}

std::string write_csv(const CsvTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::vector<ConfigEntry> parse_config(std::istream& in) {
    std::vector<ConfigEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected `key = value` at line " + std::to_string(line_no) + ": " + line,
                             line_no);
        auto trim = [](std::string s) {
            const std::size_t a = s.find_first_not_of(" \t\r");
            const std::size_t b = s.find_last_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            return s.substr(a, b - a + 1);
        };
        ConfigEntry e;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = line_no;
        if (e.key.empty())
            throw ParseError("empty key at line " + std::to_string(line_no), line_no);
        for (const auto& prev : entries)
            if (prev.key == e.key)
                throw ParseError("duplicate key `" + e.key + "` at line " + std::to_string(line_no),
                                 line_no);
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<ConfigEntry> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return parse_config(in);
}

void ConfigView::require_known(const std::vector<std::string>& known_keys) const {
    for (const auto& e : entries_) {
        bool known = false;
        for (const auto& k : known_keys)
            if (k == e.key) { known = true; break; }
        if (!known)
            throw ParseError("unknown key `" + e.key + "` at line " + std::to_string(e.line), e.line);
    }
}

const ConfigEntry* ConfigView::find(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

bool ConfigView::has(const std::string& key) const { return find(key) != nullptr; }

std::string ConfigView::get_string(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ParseError("missing key `" + key + "`");
    return e->value;
}

double ConfigView::get_double(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ParseError("missing key `" + key + "`");
    try {
        std::size_t pos = 0;
        const double v = std::stod(e->value, &pos);
        if (pos != e->value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw ParseError("key `" + key + "`: not a number at line " + std::to_string(e->line), e->line);
    }
}

long ConfigView::get_long(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ParseError("missing key `" + key + "`");
    try {
        std::size_t pos = 0;
        const long v = std::stol(e->value, &pos);
        if (pos != e->value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw ParseError("key `" + key + "`: not an integer at line " + std::to_string(e->line), e->line);
    }
}

bool ConfigView::get_bool(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ParseError("missing key `" + key + "`");
    if (e->value == "true" || e->value == "1") return true;
    if (e->value == "false" || e->value == "0") return false;
    throw ParseError("key `" + key + "`: expected true/false at line " + std::to_string(e->line), e->line);
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (c != ' ' && c != '\t') {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

std::vector<double> ConfigView::get_double_list(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ParseError("missing key `" + key + "`");
    std::vector<double> out;
    for (const auto& p : split_list(e->value)) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(p, &pos));
            if (pos != p.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw ParseError("key `" + key + "`: bad list entry `" + p + "` at line "
                                 + std::to_string(e->line),
                             e->line);
        }
    }
    return out;
}

std::vector<long> ConfigView::get_long_list(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ParseError("missing key `" + key + "`");
    std::vector<long> out;
    for (const auto& p : split_list(e->value)) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stol(p, &pos));
            if (pos != p.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw ParseError("key `" + key + "`: bad list entry `" + p + "` at line "
                                 + std::to_string(e->line),
                             e->line);
        }
    }
    return out;
}

std::string ConfigView::get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}
double ConfigView::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}
long ConfigView::get_long_or(const std::string& key, long fallback) const {
    return has(key) ? get_long(key) : fallback;
}
bool ConfigView::get_bool_or(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string checksum_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    j["seed"] = seed;
    j["version"] = version;
    j["duration_seconds"] = duration_seconds;
    j["output_checksum"] = output_checksum;
    return j.dump(2) + "\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace npselect
