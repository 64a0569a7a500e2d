#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "isokin/chains.hpp"
#include "isokin/conditioning.hpp"
#include "isokin/error.hpp"
#include "isokin/io.hpp"
#include "isokin/isotropy.hpp"
#include "isokin/jacobian.hpp"
#include "isokin/svg.hpp"
#include "json.hpp"

namespace isokin::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, "cannot parse " + what + " '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const std::string& s : split(text, ',')) out.push_back(parse_number(s, what));
  return out;
}

Ordering parse_ordering(const std::string& text) {
  std::vector<std::size_t> idx;
  for (const std::string& s : split(text, ',')) {
    const double v = parse_number(s, "ordering index");
    if (v < 1.0 || v != std::floor(v)) throw Error(ErrorCode::InvalidOrdering, "ordering indices are 1-based integers");
    idx.push_back(static_cast<std::size_t>(v));
  }
  return Ordering::from_one_based(idx);
}

std::vector<Ordering> parse_orderings(const std::string& text) {
  std::vector<Ordering> out;
  for (const std::string& s : split(text, ';')) out.push_back(parse_ordering(s));
  return out;
}

Vec2 parse_point(const std::string& text) {
  const std::vector<double> v = parse_numbers(text, "point");
  if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "a point is written as x,y");
  return {v[0], v[1]};
}

double default_tolerance() {
  if (const char* env = std::getenv("ISOKIN_TOL")) {
    const double tol = parse_number(env, "ISOKIN_TOL");
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "ISOKIN_TOL must be positive");
    return tol;
  }
  return kDefaultTolerance;
}

std::string join_indices(const Ordering& o, const char* sep) {
  std::string s;
  for (std::size_t i : o.one_based()) {
    if (!s.empty()) s += sep;
    s += std::to_string(i);
  }
  return s;
}

std::string shortest(double v) {
  // Same shortest round-trip form as the JSON writer.
  return json(v).dump();
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

struct Globals {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "auto";
};

class Context {
 public:
  Context(const Globals& g, std::ostream& out) : globals_(g), out_(out) {}

  double tol() const { return globals_.tol ? *globals_.tol : default_tolerance(); }
  std::uint64_t seed() const { return globals_.seed.value_or(0); }

  bool csv(bool tabular) const {
    if (globals_.format == "csv") return true;
    if (globals_.format == "json") return false;
    return tabular;
  }

  std::map<std::string, double> tolerances() const { return {{"tol", tol()}}; }

  void emit(const std::string& text) const {
    if (globals_.out.empty())
      out_ << text;
    else
      write_file_atomic(globals_.out, text);
  }

  void emit(const DesignDocument& doc) const { emit(serialize(doc)); }

 private:
  const Globals& globals_;
  std::ostream& out_;
};

const PointSet& require_set(const DesignDocument& doc, const std::string& file) {
  if (!doc.point_set) throw Error(ErrorCode::InvalidArgument, "'" + file + "' has no point_set section");
  return *doc.point_set;
}

DesignDocument set_document(const PointSet& set, const Context& ctx) {
  DesignDocument doc;
  doc.point_set = set;
  doc.tolerances = ctx.tolerances();
  return doc;
}

std::optional<double> spectral_condition(const Matrix& m) {
  try {
    return condition_number_spectral(m);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeOptions {
  std::string file;
  std::string ordering;
  std::string posture;
  std::string model;
  bool all_orderings = false;
};

ModelMatrix model_for(const PointSet& set, const Ordering& ordering, const std::optional<ModelMatrix>& given,
                      double tol) {
  if (given) return *given;
  const PointSet ks = placement_model_set(set, ordering);
  try {
    return model_matrix(ks, tol);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " (the point set does not induce a model set; pass --model)");
  }
}

ConditioningRecord analyze_one(const PointSet& set, const Ordering& ordering, const std::optional<Posture>& posture,
                               const ModelMatrix& model) {
  const KinematicChain chain = chain_from_ordering(set, ordering);
  const Posture p = posture ? *posture : posture_from_placement(set, ordering);
  const ChainConfiguration config = forward_kinematics(chain, p);
  const ConditioningResult result = optimal_lambda(config, model);
  const JacobianMatrix jbar = normalize_jacobian(build_jacobian(config), result.conditioning_length);
  return {ordering, chain, p, result, spectral_condition(jbar.entries)};
}

int cmd_analyze(const AnalyzeOptions& opt, const Context& ctx) {
  const DesignDocument input = read_document(opt.file);
  const PointSet& set = require_set(input, opt.file);
  const double tol = ctx.tol();
  std::optional<ModelMatrix> given;
  if (!opt.model.empty()) {
    const DesignDocument model_doc = read_document(opt.model);
    given = model_matrix(require_set(model_doc, opt.model), tol);
    if (given->cols() != set.size())
      throw Error(ErrorCode::ArityMismatch, "model set and point set have different sizes");
  }

  if (opt.all_orderings) {
    if (!opt.posture.empty()) throw Error(ErrorCode::InvalidArgument, "--posture cannot be combined with --all-orderings");
    const std::vector<Ordering> orderings = all_orderings(set.size());
    const std::vector<OrderingClass> classes = dedup_orderings(set, orderings, tol);
    std::map<Ordering, std::size_t> class_of;
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (const Ordering& o : classes[c].members) class_of.emplace(o, c);

    DesignDocument doc = set_document(set, ctx);
    for (const Ordering& o : orderings) doc.results.push_back(analyze_one(set, o, std::nullopt, model_for(set, o, given, tol)));

    if (ctx.csv(true)) {
      std::ostringstream csv;
      csv << "# isokin analyze --all-orderings\n# tol=" << shortest(tol) << "\n";
      csv << "# orderings=" << orderings.size() << " classes=" << classes.size() << "\n";
      csv << "ordering,class,representative";
      for (std::size_t i = 0; i < set.size(); ++i) csv << ",a_" << i + 1;
      csv << ",conditioning_length,lambda,residual_distance,objective_z,kappa_spectral\n";
      for (const ResultRecord& rec : doc.results) {
        const auto& r = std::get<ConditioningRecord>(rec);
        const std::size_t c = class_of.at(*r.ordering);
        csv << join_indices(*r.ordering, " ") << "," << c + 1 << "," << join_indices(classes[c].representative, " ");
        for (double a : r.chain.link_lengths()) csv << "," << shortest(a);
        csv << "," << shortest(r.result.conditioning_length) << "," << shortest(r.result.lambda) << ","
            << shortest(r.result.residual_distance) << "," << shortest(r.result.objective_z) << ","
            << (r.condition_number ? shortest(*r.condition_number) : std::string("nan")) << "\n";
      }
      ctx.emit(csv.str());
      return 0;
    }
    json j = to_json(doc);
    json cls = json::array();
    for (const OrderingClass& c : classes) {
      json members = json::array();
      for (const Ordering& o : c.members) members.push_back(o.one_based());
      cls.push_back({{"representative", c.representative.one_based()}, {"members", members}});
    }
    j["classes"] = cls;
    ctx.emit(j.dump(2) + "\n");
    return 0;
  }

  const Ordering ordering = opt.ordering.empty() ? Ordering::identity(set.size()) : parse_ordering(opt.ordering);
  std::optional<Posture> posture;
  if (!opt.posture.empty()) {
    std::vector<double> angles;
    for (const std::string& s : split(opt.posture, ',')) angles.push_back(parse_angle(s));
    posture.emplace(std::move(angles));
  }
  const ModelMatrix model = model_for(set, ordering, given, tol);
  const ConditioningRecord rec = analyze_one(set, ordering, posture, model);
  const ChainConfiguration config = forward_kinematics(rec.chain, rec.posture);
  const JacobianMatrix jac = build_jacobian(config);
  const JacobianMatrix jbar = normalize_jacobian(jac, rec.result.conditioning_length);

  DesignDocument doc = set_document(set, ctx);
  doc.orderings.push_back(ordering);
  doc.chains.push_back(rec.chain);
  doc.results.push_back(rec);
  if (ctx.csv(false)) {
    std::ostringstream csv;
    csv << "# isokin analyze\n# tol=" << shortest(tol) << "\n";
    csv << "ordering,conditioning_length,lambda,residual_distance,objective_z,kappa_spectral\n";
    csv << join_indices(ordering, " ") << "," << shortest(rec.result.conditioning_length) << ","
        << shortest(rec.result.lambda) << "," << shortest(rec.result.residual_distance) << ","
        << shortest(rec.result.objective_z) << ","
        << (rec.condition_number ? shortest(*rec.condition_number) : std::string("nan")) << "\n";
    ctx.emit(csv.str());
    return 0;
  }
  json j = to_json(doc);
  j["jacobian"] = matrix_json(jac.entries);
  j["normalized_jacobian"] = matrix_json(jbar.entries);
  j["model_matrix"] = matrix_json(model.entries());
  ctx.emit(j.dump(2) + "\n");
  return 0;
}

// --- charlen ---------------------------------------------------------------

struct CharlenOptions {
  std::string file;
  std::string chain;
  std::string ordering;
  std::string model;
  bool model_unchecked = false;
  SearchParams search;
};

int cmd_charlen(CharlenOptions opt, const Context& ctx) {
  const double tol = ctx.tol();
  opt.search.seed = ctx.seed();

  std::optional<DesignDocument> input;
  if (!opt.file.empty()) input = read_document(opt.file);

  std::optional<ModelMatrix> given;
  if (!opt.model.empty()) {
    const DesignDocument model_doc = read_document(opt.model);
    const PointSet& ks = require_set(model_doc, opt.model);
    given = opt.model_unchecked ? ModelMatrix::unchecked(ks) : model_matrix(ks, tol);
  }

  struct Job {
    std::optional<Ordering> ordering;
    KinematicChain chain;
    ModelMatrix model;
  };
  std::vector<Job> jobs;
  if (!opt.chain.empty()) {
    if (!given) throw Error(ErrorCode::InvalidArgument, "--chain needs --model");
    jobs.push_back({std::nullopt, KinematicChain(parse_numbers(opt.chain, "link length")), *given});
  } else if (input && input->point_set && (input->chains.empty() || !opt.ordering.empty())) {
    const PointSet& set = *input->point_set;
    const Ordering ordering = opt.ordering.empty() ? Ordering::identity(set.size()) : parse_ordering(opt.ordering);
    jobs.push_back({ordering, chain_from_ordering(set, ordering), model_for(set, ordering, given, tol)});
  } else if (input && !input->chains.empty()) {
    if (!given) throw Error(ErrorCode::InvalidArgument, "chains without a point set need --model");
    for (const KinematicChain& c : input->chains) jobs.push_back({std::nullopt, c, *given});
  } else {
    throw Error(ErrorCode::InvalidArgument, "charlen needs an input document or --chain");
  }

  DesignDocument doc;
  if (input && input->point_set) doc.point_set = input->point_set;
  doc.tolerances = ctx.tolerances();
  doc.tolerances["gradient_tol"] = opt.search.gradient_tol;
  doc.tolerances["isotropy_tol"] = opt.search.isotropy_tol;
  for (const Job& job : jobs) {
    doc.chains.push_back(job.chain);
    doc.results.push_back(CharacteristicRecord{job.ordering, job.chain, characteristic_length(job.chain, job.model, opt.search)});
  }

  if (ctx.csv(false)) {
    std::ostringstream csv;
    csv << "# isokin charlen\n# tol=" << shortest(tol) << " gradient_tol=" << shortest(opt.search.gradient_tol)
        << " isotropy_tol=" << shortest(opt.search.isotropy_tol) << "\n";
    csv << "link_lengths,characteristic_length,best_distance,converged,attains_isotropy,posture\n";
    for (const ResultRecord& rec : doc.results) {
      const auto& r = std::get<CharacteristicRecord>(rec);
      std::string links, angles;
      for (double a : r.chain.link_lengths()) links += (links.empty() ? "" : " ") + shortest(a);
      for (double a : r.result.best_posture.joint_angles()) angles += (angles.empty() ? "" : " ") + shortest(a);
      csv << links << "," << shortest(r.result.characteristic_length) << "," << shortest(r.result.best_distance) << ","
          << (r.result.converged ? "true" : "false") << "," << (r.result.attains_isotropy ? "true" : "false") << ","
          << angles << "\n";
    }
    ctx.emit(csv.str());
  } else {
    ctx.emit(doc);
  }
  return 0;
}

// --- render ----------------------------------------------------------------

struct RenderCmdOptions {
  std::string file;
  std::string orderings;
  bool dedup = false;
  std::size_t columns = 3;
};

RenderPanel placement_panel(const PointSet& set, const Ordering& ordering) {
  const KinematicChain chain = chain_from_ordering(set, ordering);
  const ChainConfiguration config =
      translated(forward_kinematics(chain, posture_from_placement(set, ordering)), set[ordering[0]]);
  std::string title = join_indices(ordering, "-") + "  a=(";
  for (std::size_t i = 0; i < chain.size(); ++i) title += (i ? ", " : "") + short_number(chain[i]);
  title += ")";
  return {title, config, centroid(set), std::vector<Vec2>(set.begin(), set.end())};
}

int cmd_render(const RenderCmdOptions& opt, const Context& ctx) {
  const DesignDocument doc = read_document(opt.file);
  std::vector<RenderPanel> panels;
  if (!opt.orderings.empty() || opt.dedup) {
    const PointSet& set = require_set(doc, opt.file);
    std::vector<Ordering> selected;
    if (!opt.orderings.empty()) {
      selected = parse_orderings(opt.orderings);
    } else {
      const std::vector<Ordering> all = all_orderings(set.size());
      for (const OrderingClass& c : dedup_orderings(set, all, ctx.tol())) selected.push_back(c.representative);
    }
    for (const Ordering& o : selected) panels.push_back(placement_panel(set, o));
  } else if (!doc.results.empty()) {
    for (const ResultRecord& rec : doc.results) {
      std::visit(
          [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            const Posture& posture = [&]() -> const Posture& {
              if constexpr (std::is_same_v<T, ConditioningRecord>)
                return r.posture;
              else
                return r.result.best_posture;
            }();
            const double length = [&] {
              if constexpr (std::is_same_v<T, ConditioningRecord>)
                return r.result.conditioning_length;
              else
                return r.result.characteristic_length;
            }();
            ChainConfiguration config = forward_kinematics(r.chain, posture);
            std::optional<Vec2> c;
            std::vector<Vec2> points;
            if (doc.point_set && r.ordering) {
              const Posture placement = posture_from_placement(*doc.point_set, *r.ordering);
              bool same = true;
              for (std::size_t i = 0; i < posture.size(); ++i) same = same && posture[i] == placement[i];
              if (same) {
                config = translated(config, (*doc.point_set)[(*r.ordering)[0]]);
                c = centroid(*doc.point_set);
                points.assign(doc.point_set->begin(), doc.point_set->end());
              }
            }
            std::string title = r.ordering ? join_indices(*r.ordering, "-") + "  " : std::string();
            title += "l=" + short_number(length);
            panels.push_back({title, config, c, points});
          },
          rec);
    }
  } else if (!doc.orderings.empty()) {
    const PointSet& set = require_set(doc, opt.file);
    for (const Ordering& o : doc.orderings) panels.push_back(placement_panel(set, o));
  }
  RenderOptions options;
  options.columns = opt.columns;
  ctx.emit(render_svg(panels, options));
  return 0;
}

void write_error(std::ostream& err, std::string_view code, const std::string& message, int exit) {
  err << json{{"error", code}, {"message", message}, {"exit_code", exit}}.dump() << "\n";
}

}  // namespace

double parse_angle(const std::string& text) {
  auto ends_with = [&](std::string_view suffix) {
    return text.size() >= suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("deg")) return parse_number(text.substr(0, text.size() - 3), "angle") * kPi / 180.0;
  if (ends_with("rad")) return parse_number(text.substr(0, text.size() - 3), "angle");
  return parse_number(text, "angle");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isotropic point sets, planar n-revolute chains, and conditioning lengths", "isokin"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--tol", globals.tol, "Absolute tolerance (default 1e-9, or $ISOKIN_TOL)");
  app.add_option("--seed", globals.seed, "Seed for randomized search starts");
  app.add_option("--out", globals.out, "Write output to this file instead of stdout");
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"auto", "json", "csv"}));

  // polygon
  auto* polygon = app.add_subcommand("polygon", "Vertices of a regular polygon");
  std::size_t poly_n = 0;
  double poly_radius = 1.0;
  std::string poly_phase = "0", poly_center = "0,0", poly_unit = "dimensionless";
  polygon->add_option("--n", poly_n, "Number of vertices")->required();
  polygon->add_option("--radius", poly_radius, "Circumradius");
  polygon->add_option("--phase", poly_phase, "Angle of the first vertex (deg/rad suffix)");
  polygon->add_option("--center", poly_center, "Center as x,y");
  polygon->add_option("--unit", poly_unit, "dimensionless or length");

  auto* unite = app.add_subcommand("union", "Union of two sets with a common centroid");
  std::string union_a, union_b;
  unite->add_option("first", union_a)->required();
  unite->add_option("second", union_b)->required();

  auto* rotate_cmd = app.add_subcommand("rotate", "Rotate a set about its centroid");
  std::string rotate_file, rotate_angle;
  rotate_cmd->add_option("file", rotate_file)->required();
  rotate_cmd->add_option("--angle", rotate_angle)->required();

  auto* reflect_cmd = app.add_subcommand("reflect", "Reflect a set about an axis through its centroid");
  std::string reflect_file, reflect_axis;
  reflect_cmd->add_option("file", reflect_file)->required();
  reflect_cmd->add_option("--axis", reflect_axis)->required();

  auto* check = app.add_subcommand("check-iso", "Report whether a set is isotropic");
  std::string check_file;
  check->add_option("file", check_file)->required();

  auto* chains_cmd = app.add_subcommand("chains", "Enumerate the chains induced by a set");
  std::string chains_file;
  bool chains_dedup = false;
  std::size_t chains_cap = kDefaultEnumerationCap;
  chains_cmd->add_option("file", chains_file)->required();
  chains_cmd->add_flag("--dedup", chains_dedup, "Keep one ordering per rotation class");
  chains_cmd->add_option("--cap", chains_cap, "Largest set size to enumerate");

  auto* analyze = app.add_subcommand("analyze", "Conditioning length of a chain at a posture");
  AnalyzeOptions analyze_opt;
  analyze->add_option("file", analyze_opt.file)->required();
  analyze->add_option("--ordering", analyze_opt.ordering, "One-based ordering, e.g. 1,2,3,4");
  analyze->add_option("--posture", analyze_opt.posture, "Joint angles (default: placement posture)");
  analyze->add_option("--model", analyze_opt.model, "Model set document (default: induced by the ordering)");
  analyze->add_flag("--all-orderings", analyze_opt.all_orderings, "Analyze every ordering at its placement posture");

  auto* charlen = app.add_subcommand("charlen", "Characteristic length by posture search");
  CharlenOptions charlen_opt;
  charlen->add_option("file", charlen_opt.file, "Point-set or chain document");
  charlen->add_option("--chain", charlen_opt.chain, "Link lengths a_1,...,a_n");
  charlen->add_option("--ordering", charlen_opt.ordering, "Ordering of the point set");
  charlen->add_option("--model", charlen_opt.model, "Model set document");
  charlen->add_flag("--model-unchecked", charlen_opt.model_unchecked, "Accept a non-isotropic model set");
  charlen->add_flag("--permute-model", charlen_opt.search.permute_model_columns, "Try every column order of K");
  charlen->add_option("--starts-per-dim", charlen_opt.search.starts_per_dim);
  charlen->add_option("--max-starts", charlen_opt.search.max_starts);
  charlen->add_option("--gradient-tol", charlen_opt.search.gradient_tol);
  charlen->add_option("--isotropy-tol", charlen_opt.search.isotropy_tol);
  charlen->add_option("--max-evals", charlen_opt.search.max_evaluations, "Evaluations per start");
  charlen->add_flag("--randomized", charlen_opt.search.randomized_starts, "Random starts drawn with --seed");

  auto* render = app.add_subcommand("render", "SVG of chains at their postures");
  RenderCmdOptions render_opt;
  render->add_option("file", render_opt.file)->required();
  render->add_option("--orderings", render_opt.orderings, "Semicolon-separated orderings");
  render->add_flag("--dedup", render_opt.dedup, "One panel per rotation class of orderings");
  render->add_option("--columns", render_opt.columns, "Panels per row");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "InvalidArgument", e.what(), 2);
    return 2;
  }

  const Context ctx(globals, out);
  try {
    if (globals.tol && !(*globals.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    if (polygon->parsed()) {
      const PointSet set = regular_polygon(poly_n, poly_radius, parse_angle(poly_phase), parse_point(poly_center),
                                           parse_unit(poly_unit));
      ctx.emit(set_document(set, ctx));
    } else if (unite->parsed()) {
      const DesignDocument a = read_document(union_a);
      const DesignDocument b = read_document(union_b);
      ctx.emit(set_document(union_sets(require_set(a, union_a), require_set(b, union_b), ctx.tol()), ctx));
    } else if (rotate_cmd->parsed()) {
      const DesignDocument d = read_document(rotate_file);
      ctx.emit(set_document(rotate_set(require_set(d, rotate_file), parse_angle(rotate_angle)), ctx));
    } else if (reflect_cmd->parsed()) {
      const DesignDocument d = read_document(reflect_file);
      ctx.emit(set_document(reflect_set(require_set(d, reflect_file), parse_angle(reflect_axis)), ctx));
    } else if (check->parsed()) {
      const DesignDocument d = read_document(check_file);
      const PointSet& set = require_set(d, check_file);
      const IsotropyReport report = check_isotropic_set(set, ctx.tol());
      const Vec2 c = centroid(set);
      const ModelSetCheck model = check_model_set(set, ctx.tol());
      json j{{"format", "isokin-report"},
             {"version", kFormatVersion},
             {"command", "check-iso"},
             {"tolerances", ctx.tolerances()},
             {"n", set.size()},
             {"centroid", {c.x, c.y}},
             {"d_rms", d_rms(set)},
             {"is_isotropic", report.is_isotropic},
             {"sigma_squared", report.sigma_squared},
             {"deviation", report.deviation},
             {"inertia_is_isotropic", check_isotropic_inertia(set, ctx.tol()).is_isotropic},
             {"valid_model_set", model.ok()}};
      ctx.emit(j.dump(2) + "\n");
    } else if (chains_cmd->parsed()) {
      const DesignDocument d = read_document(chains_file);
      const PointSet& set = require_set(d, chains_file);
      std::vector<Ordering> orderings = all_orderings(set.size(), chains_cap);
      std::vector<OrderingClass> classes;
      if (chains_dedup) {
        classes = dedup_orderings(set, orderings, ctx.tol());
        orderings.clear();
        for (const OrderingClass& c : classes) orderings.push_back(c.representative);
      }
      DesignDocument doc = set_document(set, ctx);
      for (const Ordering& o : orderings) {
        doc.orderings.push_back(o);
        doc.chains.push_back(chain_from_ordering(set, o));
      }
      if (ctx.csv(false)) {
        std::ostringstream csv;
        csv << "# isokin chains\n# tol=" << shortest(ctx.tol()) << "\n";
        csv << "ordering" << (chains_dedup ? ",class_size" : "");
        for (std::size_t i = 0; i < set.size(); ++i) csv << ",a_" << i + 1;
        csv << "\n";
        for (std::size_t k = 0; k < doc.orderings.size(); ++k) {
          csv << join_indices(doc.orderings[k], " ");
          if (chains_dedup) csv << "," << classes[k].members.size();
          for (double a : doc.chains[k].link_lengths()) csv << "," << shortest(a);
          csv << "\n";
        }
        ctx.emit(csv.str());
      } else {
        ctx.emit(doc);
      }
    } else if (analyze->parsed()) {
      return cmd_analyze(analyze_opt, ctx);
    } else if (charlen->parsed()) {
      return cmd_charlen(charlen_opt, ctx);
    } else if (render->parsed()) {
      return cmd_render(render_opt, ctx);
    }
  } catch (const Error& e) {
    const int code = exit_code(e.code());
    write_error(err, to_string(e.code()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what(), 3);
    return 3;
  }
  return 0;
}

}  // namespace isokin::cli
