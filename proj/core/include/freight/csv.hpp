#pragma once

/// @file csv.hpp
/// @brief Minimal delimited-text I/O and deterministic output helpers.
///
/// The engine's file formats are plain comma-separated text without
/// quoting or embedded commas.  Numeric output uses shortest-round-trip
/// formatting so reruns are byte-identical.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace freight {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position by name; throws ConfigError when absent.
    std::size_t column(std::string_view name) const;
};

/// Read a whole CSV file; the first line is the header.
/// Blank lines are skipped.  Throws ConfigError if the file is unreadable.
CsvTable read_csv(const std::string& path);
CsvTable read_csv(std::istream& in, const std::string& label);

std::vector<std::string> split_csv_line(std::string_view line);

std::string_view trim(std::string_view s);

/// Strict double parse of a whole trimmed field.
std::optional<double> parse_double(std::string_view field);

/// Shortest decimal representation that round-trips the exact value.
std::string format_double(double value);

/// Build rows with a small fluent helper; every cell already a string.
class CsvWriter {
public:
    explicit CsvWriter(std::string header_line);

    CsvWriter& row(const std::vector<std::string>& cells);
    const std::string& str() const { return buffer_; }

private:
    std::string buffer_;
};

/// Write content to path atomically (temp file in the same directory,
/// then rename).  Throws ConfigError on I/O failure.
void atomic_write_file(const std::string& path, std::string_view content);

/// FNV-1a 64-bit over raw bytes, as a 16-digit lowercase hex string.
std::string fnv1a_hex(std::string_view bytes);

/// Content digest of a file (FNV-1a 64).  Throws ConfigError if unreadable.
std::string file_digest(const std::string& path);

/// Whole file as a string.  Throws ConfigError if unreadable.
std::string read_file(const std::string& path);

}  // namespace freight
