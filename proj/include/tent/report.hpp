#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace tent {

inline constexpr const char* kToolName = "tent";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "tent-report/1";
inline constexpr const char* kGeneratorName = "mt19937_64";

// Insertion-ordered so the canonical writer needs no key sorting.
using Json = nlohmann::ordered_json;

// 64-bit FNV-1a over raw bytes; used for input-file provenance digests.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string fnv1a64_hex(const std::string& bytes);

// Canonical serialization: fixed structural layout, floats printed with 17
// significant digits ("%.17g", round-trip exact), keys in insertion order.
// Semantically equal documents produce equal bytes.
std::string canonical_dump(const Json& value);

struct ReportDocument {
  std::string command;  // subcommand that produced the report
  Json config;          // every parameter, including defaults and seeds
  Json results;         // metric name → value, plus arrays
  Json provenance;      // input digests, generator algorithm

  Json to_json() const;
  std::string to_bytes() const;
};

}  // namespace tent
