#include "rrfilt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rrfilt {

namespace {

std::string formatCell(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17e", value);
  return buffer;
}

std::vector<std::string> splitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string toCsvString(const Table& table) {
  std::string text;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) text += ',';
    text += table.columns[c];
  }
  text += '\n';
  for (const std::vector<double>& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv: row width does not match header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) text += ',';
      text += formatCell(row[c]);
    }
    text += '\n';
  }
  return text;
}

void emitCsv(const Table& table, const std::string& path) {
  const std::string text = toCsvString(table);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("csv: cannot open '" + path + "'");
  file << text;
  file.flush();
  if (!file) throw std::runtime_error("csv: write failed for '" + path + "'");
}

Table parseCsv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("csv: cannot open '" + path + "'");
  Table table;
  std::string line;
  if (!std::getline(file, line))
    throw std::runtime_error("csv: '" + path + "' is empty");
  table.columns = splitFields(line);
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = splitFields(line);
    if (fields.size() != table.columns.size())
      throw std::runtime_error("csv: row width mismatch in '" + path + "'");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& field : fields) {
      std::size_t consumed = 0;
      const double value = std::stod(field, &consumed);
      if (consumed != field.size())
        throw std::runtime_error("csv: bad numeric cell '" + field + "' in '" +
                                 path + "'");
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace rrfilt
