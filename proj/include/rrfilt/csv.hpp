#pragma once

#include <string>
#include <vector>

namespace rrfilt {

/// A rectangular numeric table with named columns; the CSV contract of the
/// experiment drivers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row has columns.size() cells
};

/// The CSV text: header row, then one row per x-value. Cells are printed
/// with 18 significant digits (%.17e) so every double round-trips exactly
/// and identical tables yield byte-identical files.
std::string toCsvString(const Table& table);

/// Writes toCsvString(table) to path; I/O failure raises std::runtime_error
/// naming the path.
void emitCsv(const Table& table, const std::string& path);

/// Reads a file produced by emitCsv back into a Table (exact values).
Table parseCsv(const std::string& path);

}  // namespace rrfilt
