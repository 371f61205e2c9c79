#include "listhyp/instance_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "listhyp/error.hpp"

namespace listhyp::cli {

namespace {

using json = nlohmann::json;

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::uint32_t require_count(const json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 ||
      v.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    throw SchemaError(std::string("\"") + key + "\" must be a positive integer");
  }
  return v.get<std::uint32_t>();
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("instance must be a JSON object");

  const std::uint32_t M = require_count(doc, "M");
  const std::uint32_t L = require_count(doc, "L");

  const auto& rows = require(doc, "P_XY");
  if (!rows.is_array()) throw SchemaError("\"P_XY\" must be an array of rows");
  Matrix raw;
  for (const auto& row : rows) {
    if (!row.is_array()) throw SchemaError("every row of \"P_XY\" must be an array");
    auto& out = raw.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number()) throw SchemaError("\"P_XY\" entries must be numbers");
      out.push_back(v.get<double>());
    }
  }
  if (raw.size() != M) throw SchemaError("\"P_XY\" must have M rows");
  for (const auto& row : raw) {
    if (row.size() != raw.front().size()) throw SchemaError("\"P_XY\" rows differ in length");
  }

  std::vector<std::string> labels;
  if (doc.contains("outcome_labels")) {
    const auto& lab = doc.at("outcome_labels");
    if (!lab.is_array()) throw SchemaError("\"outcome_labels\" must be an array of strings");
    for (const auto& s : lab) {
      if (!s.is_string()) throw SchemaError("\"outcome_labels\" must be an array of strings");
      labels.push_back(s.get<std::string>());
    }
    if (!raw.empty() && labels.size() != raw.front().size()) {
      throw SchemaError("\"outcome_labels\" must have one label per column of \"P_XY\"");
    }
  }

  Instance inst{validate_joint(raw, std::move(labels)), L};
  if (L > M) throw Error(ErrorCode::BadListSize, "L exceeds M");
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

nlohmann::ordered_json instance_to_json(const JointDistribution& P, std::uint32_t L) {
  nlohmann::ordered_json doc;
  doc["M"] = P.M();
  doc["L"] = L;
  doc["outcome_labels"] = P.outcome_labels();
  auto rows = nlohmann::ordered_json::array();
  for (std::uint32_t x = 0; x < P.M(); ++x) {
    rows.push_back(std::vector<double>(P.row(x).begin(), P.row(x).end()));
  }
  doc["P_XY"] = std::move(rows);
  return doc;
}

std::string content_hash(const JointDistribution& P) {
  std::string canon = std::to_string(P.M()) + ";" + std::to_string(P.card_y()) + ";";
  for (const auto& l : P.outcome_labels()) canon += json(l).dump() + ",";
  canon += ";";
  for (double v : P.flat()) canon += format_real(v) + ",";

  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> out{};
  auto [ptr, ec] = std::to_chars(out.data(), out.data() + 16, h, 16);
  std::string hex(out.data(), ptr);
  return std::string(16 - hex.size(), '0') + hex;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace listhyp::cli
