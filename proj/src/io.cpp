#include "isokin/io.hpp"

#include <fstream>
#include <sstream>

#include "isokin/error.hpp"

namespace isokin {

using nlohmann::json;

namespace {

json ordering_json(const Ordering& o) { return o.one_based(); }

Ordering ordering_from(const json& j) { return Ordering::from_one_based(j.get<std::vector<std::size_t>>()); }

json doubles(std::span<const double> v) { return std::vector<double>(v.begin(), v.end()); }

json record_json(const ResultRecord& record) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        json j;
        if (r.ordering) j["ordering"] = ordering_json(*r.ordering);
        j["link_lengths"] = doubles(r.chain.link_lengths());
        if constexpr (std::is_same_v<T, ConditioningRecord>) {
          j["kind"] = "conditioning";
          j["posture"] = doubles(r.posture.joint_angles());
          j["lambda"] = r.result.lambda;
          j["conditioning_length"] = r.result.conditioning_length;
          j["residual_distance"] = r.result.residual_distance;
          j["objective_z"] = r.result.objective_z;
          j["condition_number"] = r.condition_number ? json(*r.condition_number) : json(nullptr);
        } else {
          j["kind"] = "characteristic_length";
          j["posture"] = doubles(r.result.best_posture.joint_angles());
          j["characteristic_length"] = r.result.characteristic_length;
          j["lambda"] = r.result.lambda;
          j["best_distance"] = r.result.best_distance;
          j["objective_z"] = r.result.objective_z;
          j["gradient_norm"] = r.result.gradient_norm;
          j["converged"] = r.result.converged;
          j["attains_isotropy"] = r.result.attains_isotropy;
          j["starts_used"] = r.result.starts_used;
          j["evaluations"] = r.result.evaluations;
          j["model_columns"] = ordering_json(r.result.model_columns);
        }
        return j;
      },
      record);
}

ResultRecord record_from(const json& j) {
  std::optional<Ordering> ordering;
  if (j.contains("ordering")) ordering = ordering_from(j.at("ordering"));
  KinematicChain chain(j.at("link_lengths").get<std::vector<double>>());
  Posture posture(j.at("posture").get<std::vector<double>>());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "conditioning") {
    ConditioningRecord r{ordering, chain, posture, {}, std::nullopt};
    r.result.lambda = j.at("lambda").get<double>();
    r.result.conditioning_length = j.at("conditioning_length").get<double>();
    r.result.residual_distance = j.at("residual_distance").get<double>();
    r.result.objective_z = j.at("objective_z").get<double>();
    if (j.contains("condition_number") && !j.at("condition_number").is_null())
      r.condition_number = j.at("condition_number").get<double>();
    return r;
  }
  if (kind == "characteristic_length") {
    CharacteristicRecord r{ordering, chain, {}};
    r.result.best_posture = posture;
    r.result.characteristic_length = j.at("characteristic_length").get<double>();
    r.result.lambda = j.at("lambda").get<double>();
    r.result.best_distance = j.at("best_distance").get<double>();
    r.result.objective_z = j.at("objective_z").get<double>();
    r.result.gradient_norm = j.at("gradient_norm").get<double>();
    r.result.converged = j.at("converged").get<bool>();
    r.result.attains_isotropy = j.at("attains_isotropy").get<bool>();
    r.result.starts_used = j.at("starts_used").get<std::size_t>();
    r.result.evaluations = j.at("evaluations").get<std::size_t>();
    r.result.model_columns = ordering_from(j.at("model_columns"));
    return r;
  }
  throw Error(ErrorCode::ParseError, "unknown result kind '" + kind + "'");
}

std::size_t record_arity(const ResultRecord& record) {
  return std::visit([](const auto& r) { return r.chain.size(); }, record);
}

}  // namespace

void DesignDocument::validate() const {
  std::optional<std::size_t> arity;
  auto expect = [&arity](std::size_t n, const char* section) {
    if (!arity) {
      arity = n;
    } else if (*arity != n) {
      throw Error(ErrorCode::ArityMismatch, std::string(section) + " has arity " + std::to_string(n) +
                                                ", expected " + std::to_string(*arity));
    }
  };
  if (point_set) expect(point_set->size(), "point_set");
  for (const Ordering& o : orderings) expect(o.size(), "orderings");
  for (const KinematicChain& c : chains) expect(c.size(), "chains");
  for (const ResultRecord& r : results) expect(record_arity(r), "results");
}

json to_json(const DesignDocument& doc) {
  json j;
  j["format"] = kFormatName;
  j["version"] = doc.version;
  if (doc.point_set) {
    json points = json::array();
    for (const Vec2& p : *doc.point_set) points.push_back({p.x, p.y});
    j["point_set"] = {{"unit", std::string(to_string(doc.point_set->unit()))}, {"points", points}};
  }
  if (!doc.orderings.empty()) {
    json list = json::array();
    for (const Ordering& o : doc.orderings) list.push_back(ordering_json(o));
    j["orderings"] = list;
  }
  if (!doc.chains.empty()) {
    json list = json::array();
    for (const KinematicChain& c : doc.chains) list.push_back({{"link_lengths", doubles(c.link_lengths())}});
    j["chains"] = list;
  }
  if (!doc.results.empty()) {
    json list = json::array();
    for (const ResultRecord& r : doc.results) list.push_back(record_json(r));
    j["results"] = list;
  }
  if (!doc.tolerances.empty()) j["tolerances"] = doc.tolerances;
  return j;
}

DesignDocument document_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "design document must be a JSON object");
  DesignDocument doc;
  try {
    doc.version = j.at("version").get<std::string>();
    if (doc.version != kFormatVersion)
      throw Error(ErrorCode::UnsupportedVersion, "format version '" + doc.version + "' is not supported");
    if (j.contains("point_set")) {
      const json& ps = j.at("point_set");
      std::vector<Vec2> points;
      for (const json& p : ps.at("points")) {
        if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::ParseError, "points must be [x, y] pairs");
        points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      }
      const Unit unit = parse_unit(ps.value("unit", std::string("length")));
      doc.point_set.emplace(std::move(points), unit);
    }
    if (j.contains("orderings"))
      for (const json& o : j.at("orderings")) doc.orderings.push_back(ordering_from(o));
    if (j.contains("chains"))
      for (const json& c : j.at("chains"))
        doc.chains.emplace_back(c.at("link_lengths").get<std::vector<double>>());
    if (j.contains("results"))
      for (const json& r : j.at("results")) doc.results.push_back(record_from(r));
    if (j.contains("tolerances")) doc.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  doc.validate();
  return doc;
}

std::string serialize(const DesignDocument& doc) { return to_json(doc).dump(2) + "\n"; }

DesignDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return document_from_json(j);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw Error(ErrorCode::FileNotFound, "'" + path.string() + "' does not exist");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

DesignDocument read_document(const std::filesystem::path& path) { return parse_document(read_text_file(path)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw Error(ErrorCode::IoError, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into '" + path.string() + "'");
  }
}

}  // namespace isokin
