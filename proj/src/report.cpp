#include "tent/report.hpp"

#include <cmath>
#include <cstdio>

#include "tent/errors.hpp"

namespace tent {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 14695981039346656037ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes.data(),
                                                        bytes.size())));
  return std::string(buffer);
}

namespace {

bool all_primitive(const Json& array) {
  for (const auto& v : array)
    if (v.is_object() || v.is_array()) return false;
  return true;
}

void append_number(std::string& out, const Json& value) {
  char buffer[40];
  int len = 0;
  if (value.is_number_float()) {
    double d = value.get<double>();
    if (!std::isfinite(d))
      throw Error(Errc::InvalidConfig, "non-finite value in report");
    len = std::snprintf(buffer, sizeof(buffer), "%.17g", d);
  } else if (value.is_number_unsigned()) {
    len = std::snprintf(buffer, sizeof(buffer), "%llu",
                        static_cast<unsigned long long>(
                            value.get<std::uint64_t>()));
  } else {
    len = std::snprintf(buffer, sizeof(buffer), "%lld",
                        static_cast<long long>(value.get<std::int64_t>()));
  }
  out.append(buffer, static_cast<std::size_t>(len));
}

void dump_value(std::string& out, const Json& value, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string inner(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (value.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::string:
      out += Json(value.get<std::string>()).dump();  // JSON string escaping
      break;
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
    case Json::value_t::number_float:
      append_number(out, value);
      break;
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        break;
      }
      if (all_primitive(value)) {  // scalar rows on one line for diff-ability
        out += '[';
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out += ", ";
          dump_value(out, value[i], depth);
        }
        out += ']';
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out += inner;
        dump_value(out, value[i], depth + 1);
        if (i + 1 < value.size()) out += ',';
        out += '\n';
      }
      out += pad + ']';
      break;
    }
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& [key, element] : value.items()) {
        out += inner + Json(key).dump() + ": ";
        dump_value(out, element, depth + 1);
        if (++i < value.size()) out += ',';
        out += '\n';
      }
      out += pad + '}';
      break;
    }
    default:
      throw Error(Errc::InvalidConfig, "unsupported value in report");
  }
}

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  dump_value(out, value, 0);
  out += '\n';
  return out;
}

Json ReportDocument::to_json() const {
  Json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["schema"] = kReportSchema;
  doc["command"] = command;
  doc["config"] = config.is_null() ? Json::object() : config;
  doc["results"] = results.is_null() ? Json::object() : results;
  doc["provenance"] = provenance.is_null() ? Json::object() : provenance;
  return doc;
}

std::string ReportDocument::to_bytes() const { return canonical_dump(to_json()); }

}  // namespace tent
