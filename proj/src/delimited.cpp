#include "tent/delimited.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace tent {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& cell, std::size_t row, std::size_t col) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    std::ostringstream msg;
    msg << "row " << row + 1 << ", column " << col + 1 << ": cell '" << cell
        << "' is not numeric";
    throw Error(Errc::NonNumericCell, msg.str());
  }
  return value;
}

int parse_label(const std::string& cell, std::size_t row, std::size_t col) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    std::ostringstream msg;
    msg << "row " << row + 1 << ", column " << col + 1 << ": label '" << cell
        << "' is not an integer";
    throw Error(Errc::NonNumericCell, msg.str());
  }
  return value;
}

}  // namespace

Dataset read_delimited(const std::string& bytes,
                       const DelimitedOptions& options) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= bytes.size()) {
      std::size_t pos = bytes.find('\n', start);
      std::string line = (pos == std::string::npos)
                             ? bytes.substr(start)
                             : bytes.substr(start, pos - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!trimmed(line).empty()) lines.push_back(line);
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  std::size_t first_row = options.has_header ? 1 : 0;
  if (lines.size() <= first_row)
    throw Error(Errc::RaggedRows, "no data rows");

  std::size_t columns = split_line(lines[first_row], options.delimiter).size();
  int label_col = -2;  // −2 = none
  if (options.label_column) {
    label_col = *options.label_column;
    if (label_col == -1) label_col = static_cast<int>(columns) - 1;
    if (label_col < 0 || static_cast<std::size_t>(label_col) >= columns)
      throw Error(Errc::InvalidConfig, "label column index out of range");
    if (columns < 2)
      throw Error(Errc::InvalidConfig,
                  "need at least one feature column besides the label");
  }

  Dataset data;
  data.p = columns - (options.label_column ? 1 : 0);
  std::vector<int> labels;
  for (std::size_t r = first_row; r < lines.size(); ++r) {
    std::vector<std::string> cells = split_line(lines[r], options.delimiter);
    if (cells.size() != columns) {
      std::ostringstream msg;
      msg << "row " << r + 1 << " has " << cells.size()
          << " cells, expected " << columns;
      throw Error(Errc::RaggedRows, msg.str());
    }
    for (std::size_t c = 0; c < columns; ++c) {
      std::string cell = trimmed(cells[c]);
      if (static_cast<int>(c) == label_col)
        labels.push_back(parse_label(cell, r, c));
      else
        data.x.push_back(parse_double(cell, r, c));
    }
    ++data.n;
  }
  if (options.label_column) data.labels = std::move(labels);
  return data;
}

std::string write_delimited(const Dataset& data, char delimiter) {
  std::ostringstream out;
  char buffer[64];
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t l = 0; l < data.p; ++l) {
      if (l > 0) out << delimiter;
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer),
                                     data.at(i, l));
      out.write(buffer, ptr - buffer);
      (void)ec;
    }
    if (data.labels) out << delimiter << (*data.labels)[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace tent
