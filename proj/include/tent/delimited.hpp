#pragma once

#include <optional>
#include <string>

#include "tent/ewkm.hpp"

namespace tent {

struct DelimitedOptions {
  char delimiter = ',';
  bool has_header = false;
  // Column holding the integer class label: unset = no labels, −1 = last
  // column, otherwise a 0-based index.
  std::optional<int> label_column;
};

// Parses a rectangular numeric table. Missing or non-numeric cells are hard
// errors with row/column diagnostics; nothing is imputed or renormalized.
Dataset read_delimited(const std::string& bytes, const DelimitedOptions& options);

// Full-precision serialization (shortest round-trip float text); the labels,
// when present, are appended as a last column.
std::string write_delimited(const Dataset& data, char delimiter = ',');

}  // namespace tent
