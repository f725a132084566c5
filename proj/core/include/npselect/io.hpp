#ifndef NPSELECT_IO_HPP
#define NPSELECT_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace npselect {

inline constexpr const char* kVersion = "0.1.0";

// Parse or usage errors that should surface as exit code 2; carries the
// offending line when one exists (0 = not line-specific).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Lossless float formatting (17 significant digits) and exact integer text.
std::string format_double(double v);

// --- CSV (RFC-4180 quoting) ---

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);
std::string write_csv(const CsvTable& table);

// --- key = value config files ---

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// Lines are `key = value`; blank lines and lines starting with '#' are
// skipped. Duplicate keys are rejected.
std::vector<ConfigEntry> parse_config(std::istream& in);
std::vector<ConfigEntry> parse_config_file(const std::string& path);

// Typed lookup helpers; each throws ParseError naming the key (and line on
// conversion failure). `known_keys` validation rejects unknown keys quoting
// the offending line.
class ConfigView {
public:
    explicit ConfigView(std::vector<ConfigEntry> entries) : entries_(std::move(entries)) {}

    void require_known(const std::vector<std::string>& known_keys) const;
    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_long(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<long> get_long_list(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_long_or(const std::string& key, long fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

private:
    const ConfigEntry* find(const std::string& key) const;
    std::vector<ConfigEntry> entries_;
};

// --- run manifests ---

// FNV-1a 64-bit digest; stable fingerprint for output files.
std::uint64_t fnv1a64(const std::string& bytes);
std::string checksum_hex(const std::string& bytes);

// Serialized alongside every result file: re-running the subcommand with the
// recorded parameters reproduces the recorded checksum.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> params;  // fully resolved
    std::uint64_t seed = 0;
    std::string version = kVersion;
    double duration_seconds = 0.0;
    std::string output_checksum;

    std::string to_json() const;
};

// Writes via a temp file in the same directory followed by rename.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace npselect

#endif
