#pragma once

// Design document: the JSON file format shared by every CLI subcommand.
//
//   {
//     "format": "isokin-design",
//     "version": "1",
//     "point_set": {"unit": "dimensionless", "points": [[x, y], ...]},
//     "orderings": [[1, 2, 3, 4], ...],            one-based
//     "chains": [{"link_lengths": [...]}, ...],
//     "results": [{"kind": "conditioning" | "characteristic_length", ...}],
//     "tolerances": {"tol": 1e-09, ...}
//   }
//
// Every section except "version" is optional. Numbers are written in
// shortest round-trip form.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isokin/chains.hpp"
#include "isokin/conditioning.hpp"
#include "isokin/geometry.hpp"
#include "json.hpp"

namespace isokin {

inline constexpr const char* kFormatName = "isokin-design";
inline constexpr const char* kFormatVersion = "1";

struct ConditioningRecord {
  std::optional<Ordering> ordering;
  KinematicChain chain;
  Posture posture;
  ConditioningResult result;
  std::optional<double> condition_number;
};

struct CharacteristicRecord {
  std::optional<Ordering> ordering;
  KinematicChain chain;
  CharacteristicLengthResult result;
};

using ResultRecord = std::variant<ConditioningRecord, CharacteristicRecord>;

struct DesignDocument {
  std::string version = kFormatVersion;
  std::optional<PointSet> point_set;
  std::vector<Ordering> orderings;
  std::vector<KinematicChain> chains;
  std::vector<ResultRecord> results;
  std::map<std::string, double> tolerances;

  /// Throws ArityMismatch when sections disagree on the number of joints.
  void validate() const;
};

nlohmann::json to_json(const DesignDocument& doc);
DesignDocument document_from_json(const nlohmann::json& j);

std::string serialize(const DesignDocument& doc);
DesignDocument parse_document(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
DesignDocument read_document(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace isokin
