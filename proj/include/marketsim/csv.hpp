#pragma once

#include <string>
#include <vector>

namespace marketsim {

// Shortest round-trip decimal representation.
std::string format_double(double value);

// RFC-4180 style quoting when a field contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

// Header + rows, trailing newline, UTF-8. Throws std::runtime_error with the
// path on I/O failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Minimal reader for our own output (used by tests and tooling); handles
// quoted fields.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace marketsim
