#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "listhyp/dist_core.hpp"

namespace listhyp::cli {

/// Malformed JSON or a document that does not match the instance schema (exit code 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance file: { "M": int, "L": int, "outcome_labels": [string], "P_XY": [[real]] }.
struct Instance {
  JointDistribution joint;
  std::uint32_t L = 1;
};

/// Throws SchemaError for structural problems and listhyp::Error for numeric ones.
Instance parse_instance(const std::string& text);
Instance read_instance(const std::string& path);

nlohmann::ordered_json instance_to_json(const JointDistribution& P, std::uint32_t L);

/// 16 hex digits of FNV-1a 64 over the canonical serialization of P_XY and its labels.
std::string content_hash(const JointDistribution& P);

/// Shortest decimal string that reads back to the same double ("inf", "nan" otherwise).
std::string format_real(double v);

}  // namespace listhyp::cli
