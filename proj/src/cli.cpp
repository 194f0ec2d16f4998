#include "chamber/cli.hpp"

#include "chamber/cox_git.hpp"
#include "chamber/dvr_toric.hpp"
#include "chamber/errors.hpp"
#include "chamber/io.hpp"
#include "chamber/monoids.hpp"
#include "chamber/polyhedral.hpp"
#include "chamber/refinement.hpp"
#include "chamber/root_data.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>

namespace chamber::cli {

namespace {

using io::json;

class UsageError : public Error {
public:
  explicit UsageError(const std::string &what) : Error("UsageError", what) {}
};

struct Report {
  std::string command;
  json inputs = json::object();
  json verdicts = json::object();
  json witnesses = json::object();
  json result;
};

json encode_vectors(const std::vector<LatticeVector> &vs) {
  json out = json::array();
  for (const auto &v : vs) out.push_back(io::encode_vector(v));
  return out;
}

json encode_vectors(const std::vector<RationalVector> &vs) {
  json out = json::array();
  for (const auto &v : vs) out.push_back(io::encode_vector(v));
  return out;
}

json encode_integers(const std::vector<Integer> &xs) {
  json out = json::array();
  for (const auto &x : xs) out.push_back(io::encode_integer(x));
  return out;
}

json encode_measure(const SmoothnessMeasure &m) {
  json out = json::array();
  for (const auto &[excess, index] : m) out.push_back({excess, io::encode_integer(index)});
  return out;
}

json encode_trace(const RefinementTrace &t) {
  json steps = json::array();
  for (const auto &s : t.steps)
    steps.push_back({{"rays", encode_vectors(s.rays)},
                     {"before", encode_measure(s.before)},
                     {"after", encode_measure(s.after)}});
  return {{"steps", std::move(steps)}, {"iterations", t.iterations}, {"budget", t.budget}};
}

// Guards run on the raw document so oversized inputs fail before any work.
void guard_fan_document(const json &j, std::size_t max_rays = 0) {
  if (!j.is_object()) return;
  auto rank = j.find("rank");
  if (rank != j.end() && rank->is_number_unsigned() && rank->get<std::size_t>() > kMaxFanRank)
    throw UsageError("fan rank exceeds the limit of " + std::to_string(kMaxFanRank));
  auto rays = j.find("rays");
  if (max_rays && rays != j.end() && rays->is_array() && rays->size() > max_rays)
    throw UsageError("more than " + std::to_string(max_rays) + " rays");
}

Fan load_fan(const std::string &path, Report &r, std::size_t max_rays = 0) {
  const json doc = io::read_document(path);
  guard_fan_document(doc, max_rays);
  Fan f = io::decode_fan(doc);
  r.inputs["fan"] = io::encode_fan(f);
  return f;
}

MatrixGroup load_group(const std::string &path, std::size_t rank, Report &r) {
  MatrixGroup g = io::decode_group(io::read_document(path));
  if (g.rank() != rank) throw UsageError("group rank does not match the fan");
  r.inputs["group"] = io::encode_group(g);
  return g;
}

std::vector<Integer> parse_integers(const std::string &text) {
  std::string cleaned = text;
  for (char &c : cleaned)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(cleaned);
  std::vector<Integer> out;
  std::string tok;
  while (in >> tok) out.push_back(io::decode_integer(json(tok)));
  return out;
}

// "a,b;c,d" -> {(a,b), (c,d)}
std::vector<LatticeVector> parse_generator_list(const std::string &text) {
  std::vector<LatticeVector> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    auto coords = parse_integers(item);
    if (coords.empty()) continue;
    if (!out.empty() && coords.size() != out.front().rank())
      throw ParseError("generators of different lengths");
    out.emplace_back(std::move(coords));
  }
  if (out.empty()) throw ParseError("no generators given");
  return out;
}

// ---------------------------------------------------------------------------

struct FanCheckOptions {
  std::string path;
  bool smooth = false, complete = false, projective = false;
  std::string group;
};

int cmd_fan_check(const FanCheckOptions &o, Report &r) {
  const Fan f = load_fan(o.path, r);
  const bool all = !o.smooth && !o.complete && !o.projective && o.group.empty();
  bool ok = true;
  r.verdicts["valid"] = true;

  if (o.smooth || all) {
    const auto s = is_smooth(f);
    r.verdicts["smooth"] = s.smooth;
    if (!s.smooth) {
      ok = false;
      r.witnesses["smooth"] = {{"cone", f.cones()[*s.witness_cone]},
                               {"rays", encode_vectors(f.cone_rays(*s.witness_cone))},
                               {"index", io::encode_integer(s.witness_index)}};
    }
  }
  if (o.complete || all) {
    try {
      const auto c = is_complete(f);
      r.verdicts["complete"] = c.complete;
      json w = {{"pairing_certificate", c.pairing_certificate},
                {"probing_certificate", c.probing_certificate}};
      if (c.uncovered_probe) w["uncovered_probe"] = io::encode_vector(*c.uncovered_probe);
      r.witnesses["complete"] = std::move(w);
      ok = ok && c.complete;
    } catch (const NotFullDimensional &e) {
      r.verdicts["complete"] = false;
      r.witnesses["complete"] = {{"reason", e.kind()}};
      ok = false;
    }
  }
  if (o.projective || all) {
    try {
      const auto p = is_projective(f);
      if (p.projective) {
        if (!verify_support_function(f, p.maximal_cones, p.support_function))
          throw std::logic_error("support function witness failed re-verification");
        json cones = json::array();
        for (auto m : p.maximal_cones) cones.push_back(f.cones()[m]);
        r.witnesses["projective"] = {{"maximal_cones", std::move(cones)},
                                     {"support_function", encode_vectors(p.support_function)},
                                     {"verified", true}};
      } else {
        r.witnesses["projective"] = {{"reason", "no strictly concave support function"}};
      }
      r.verdicts["projective"] = p.projective;
      ok = ok && p.projective;
    } catch (const NonConvexSupport &e) {
      r.verdicts["projective"] = false;
      r.witnesses["projective"] = {{"reason", e.kind()}};
      ok = false;
    }
  }
  if (!o.group.empty()) {
    const MatrixGroup g = load_group(o.group, f.rank(), r);
    const auto s = is_stable(f, g);
    r.verdicts["stable"] = s.stable;
    if (!s.stable) {
      ok = false;
      r.witnesses["stable"] = {{"generator", *s.generator},
                               {"moved_cone", f.cones()[*s.moved_cone]}};
    }
  }
  return ok ? kPass : kFail;
}

struct FanSaturateOptions {
  std::string path, group;
};

int cmd_fan_saturate(const FanSaturateOptions &o, Report &r) {
  const Fan f = load_fan(o.path, r);
  const MatrixGroup g = load_group(o.group, f.rank(), r);
  try {
    const Fan s = saturate(f, g);
    r.verdicts["saturated"] = true;
    r.verdicts["valid"] = fan_validate(s).valid();
    r.verdicts["stable"] = is_stable(s, g).stable;
    r.result = {{"fan", io::encode_fan(s)}};
    return r.verdicts["valid"].get<bool>() && r.verdicts["stable"].get<bool>() ? kPass : kFail;
  } catch (const OverlapError &e) {
    r.verdicts["saturated"] = false;
    r.witnesses["saturated"] = {{"reason", e.kind()}, {"message", e.what()}};
    return kFail;
  }
}

struct DatumOptions {
  std::string preset, cartan, form = "adjoint";
};

RootDatum load_datum(const DatumOptions &o, Report &r) {
  if (o.preset.empty() == o.cartan.empty())
    throw UsageError("give exactly one of --preset and --cartan");
  IntMatrix c;
  if (!o.preset.empty()) {
    c = cartan_preset(o.preset);
  } else {
    const json doc = io::read_document(o.cartan);
    if (!doc.is_object() || doc.value("schema_version", "") != io::kSchemaVersion ||
        !doc.contains("cartan"))
      throw ParseError("expected {\"schema_version\": \"1\", \"cartan\": [...]}");
    c = io::decode_matrix(doc["cartan"]);
  }
  if (c.rows() != c.cols()) throw ParseError("Cartan matrix must be square");
  if (c.rows() > kMaxFanRank)
    throw UsageError("root datum rank exceeds the limit of " + std::to_string(kMaxFanRank));
  const LatticeForm form = o.form == "sc" ? LatticeForm::SimplyConnected : LatticeForm::Adjoint;
  r.inputs["cartan"] = io::encode_matrix(c);
  r.inputs["form"] = to_string(form);
  return build_root_datum(c, form);
}

struct RefineOptions {
  DatumOptions datum;
  std::string fan, group, gamma = "full";
  std::size_t budget = kDefaultRefinementBudget;
};

void check_projective(const Fan &f, Report &r, const char *key) {
  const auto p = is_projective(f);
  const bool verified = p.projective && verify_support_function(f, p.maximal_cones, p.support_function);
  if (p.projective && !verified)
    throw std::logic_error("support function witness failed re-verification");
  r.verdicts[key] = verified;
  if (verified) r.witnesses[std::string(key) + "_support_function"] = encode_vectors(p.support_function);
}

int cmd_refine(const RefineOptions &o, Report &r) {
  const bool from_datum = !o.datum.preset.empty() || !o.datum.cartan.empty();
  if (from_datum == !o.fan.empty()) throw UsageError("give a root datum or --fan, not both");
  r.inputs["budget"] = o.budget;
  try {
    if (from_datum) {
      const RootDatum rd = load_datum(o.datum, r);
      r.inputs["gamma"] = o.gamma;
      const MatrixGroup gamma =
          o.gamma == "full" ? diagram_automorphisms(rd) : MatrixGroup::trivial(rd.rank());
      const GoodFanResult g = good_fan(rd, gamma, o.budget);
      const MatrixGroup w = weyl_group(rd);
      r.verdicts["sigma_valid"] = fan_validate(g.sigma).valid();
      r.verdicts["chamber_support"] = covers_cone(g.sigma, dominant_chamber(rd));
      r.verdicts["gamma_stable"] = is_stable(g.sigma, gamma).stable;
      r.verdicts["saturated_valid"] = fan_validate(g.saturated).valid();
      r.verdicts["weyl_stable"] = is_stable(g.saturated, w).stable;
      r.verdicts["smooth"] = is_smooth(g.saturated).smooth;
      check_projective(g.saturated, r, "projective");
      r.witnesses["trace"] = encode_trace(g.trace);
      r.result = {{"sigma", io::encode_fan(g.sigma)}, {"saturated", io::encode_fan(g.saturated)}};
    } else {
      const Fan f = load_fan(o.fan, r);
      const MatrixGroup g = o.group.empty() ? MatrixGroup::trivial(f.rank())
                                            : load_group(o.group, f.rank(), r);
      const auto [out, trace] = equivariant_smooth_refine(f, g, o.budget);
      r.verdicts["valid"] = fan_validate(out).valid();
      r.verdicts["refines"] = refines(out, f);
      r.verdicts["stable"] = is_stable(out, g).stable;
      r.verdicts["smooth"] = is_smooth(out).smooth;
      check_projective(out, r, "projective");
      r.witnesses["trace"] = encode_trace(trace);
      r.result = {{"fan", io::encode_fan(out)}};
    }
  } catch (const BudgetExceeded &e) {
    r.verdicts["within_budget"] = false;
    r.witnesses["trace"] = encode_trace(e.trace());
    return kFail;
  }
  r.verdicts["within_budget"] = true;
  for (const auto &[k, v] : r.verdicts.items())
    if (!v.get<bool>()) return kFail;
  return kPass;
}

int cmd_rootdatum_weylfan(const DatumOptions &o, Report &r) {
  const RootDatum rd = load_datum(o, r);
  const Fan f = weyl_fan(rd);
  r.verdicts["valid"] = fan_validate(f).valid();
  r.result = {{"fan", io::encode_fan(f)},
              {"maximal_cones", f.maximal_cones().size()},
              {"weyl_group_order", weyl_group(rd).order()},
              {"chamber_rays", encode_vectors(dominant_chamber(rd).rays())}};
  return r.verdicts["valid"].get<bool>() ? kPass : kFail;
}

int cmd_rootdatum_strata(const DatumOptions &o, Report &r) {
  const RootDatum rd = load_datum(o, r);
  const StrataPoset p = boundary_strata(rd);
  const auto chamber_rays = dominant_chamber(rd).rays();
  json strata = json::array();
  for (const auto &s : p.strata) {
    std::vector<LatticeVector> face;
    for (auto i : s.face) face.push_back(chamber_rays[i]);
    strata.push_back({{"nodes", s.nodes},
                      {"face", s.face},
                      {"face_rays", encode_vectors(face)},
                      {"codimension", s.codimension}});
  }
  json closure = json::array();
  for (std::size_t a = 0; a < p.strata.size(); ++a)
    for (std::size_t b = 0; b < p.strata.size(); ++b)
      if (a != b && p.in_closure_of(a, b)) closure.push_back({a, b});
  r.result = {{"strata", std::move(strata)},
              {"in_closure_of", std::move(closure)},
              {"divisors", p.divisors()},
              {"chamber_rays", encode_vectors(chamber_rays)}};
  return kPass;
}

struct MonoidOptions {
  std::string path, generators;
  bool saturate = false, hilbert = false, fiber = false;
};

int cmd_monoid(const MonoidOptions &o, Report &r) {
  if (o.path.empty() == o.generators.empty())
    throw UsageError("give a generator document or --generators, not both");
  if (int(o.saturate) + int(o.hilbert) + int(o.fiber) != 1)
    throw UsageError("choose exactly one of --saturate, --hilbert, --fiber-checks");
  io::GeneratorList list;
  if (!o.path.empty()) {
    list = io::decode_generators(io::read_document(o.path));
  } else {
    list.generators = parse_generator_list(o.generators);
    list.rank = list.generators.front().rank();
  }
  if (list.rank > kMaxFanRank)
    throw UsageError("monoid rank exceeds the limit of " + std::to_string(kMaxFanRank));
  const AffineMonoid q(list.rank, list.generators);
  r.inputs["rank"] = q.rank();
  r.inputs["generators"] = encode_vectors(q.generators());

  if (o.saturate) {
    r.inputs["mode"] = "saturate";
    const SaturationResult s = saturate_monoid(q);
    json certs = json::array();
    for (const auto &c : s.certificates)
      certs.push_back({{"element", io::encode_vector(c.element)},
                       {"multiple", io::encode_integer(c.multiple)},
                       {"coefficients", encode_integers(c.coefficients)}});
    json group = {{"basis", encode_vectors(s.group.basis)}, {"index", nullptr}};
    if (s.group.index) group["index"] = io::encode_integer(*s.group.index);
    r.verdicts["pointed"] = s.pointed;
    r.verdicts["saturated"] = s.added.empty();
    r.witnesses["certificates"] = std::move(certs);
    r.result = {{"saturated_generators", encode_vectors(s.saturated_generators)},
                {"added", encode_vectors(s.added)},
                {"group", std::move(group)}};
    if (s.pointed) r.result["cone_rays"] = encode_vectors(s.cone_rays);
    return kPass;
  }
  if (o.hilbert) {
    r.inputs["mode"] = "hilbert";
    try {
      r.result = {{"hilbert_basis", encode_vectors(hilbert_basis(q.cone()))}};
      r.verdicts["pointed"] = true;
      return kPass;
    } catch (const NotPointed &e) {
      r.verdicts["pointed"] = false;
      r.witnesses["pointed"] = {{"reason", e.kind()}, {"message", e.what()}};
      return kFail;
    }
  }
  r.inputs["mode"] = "fiber-checks";
  const FiberChecks c = fiber_checks(q);
  r.verdicts["generates_lattice"] = c.generates_lattice;
  r.verdicts["saturated"] = c.saturated;
  return c.generates_lattice && c.saturated ? kPass : kFail;
}

UnipotentAction parse_action(const std::string &text, std::size_t rank) {
  const auto entries = parse_integers(text);
  if (entries.size() != rank * rank)
    throw UsageError("--matrix needs " + std::to_string(rank * rank) + " entries");
  IntMatrix a(rank, rank);
  for (std::size_t i = 0; i < entries.size(); ++i) a(i / rank, i % rank) = entries[i];
  UnipotentAction u(a);
  if (!u.is_nontrivial_unipotent())
    throw NotUnipotent("the matrix must satisfy (A - I)^2 = 0 and A != I");
  return u;
}

json encode_escape(const EscapeWitness &e) {
  return {{"ray", io::encode_vector(e.ray)},
          {"power", e.power},
          {"image", io::encode_vector(e.image)}};
}

struct DvrOptions {
  std::string path, matrix;
};

int cmd_dvr_analyze(const DvrOptions &o, Report &r) {
  const Fan f = load_fan(o.path, r);
  if (f.rank() < 2) throw UsageError("a fan over a DVR needs rank at least 2");
  const DvrFan d(f);
  r.verdicts["constant_family"] = is_constant_family(d);
  r.result = {{"base_rank", d.base_rank()},
              {"special_fiber_components", encode_vectors(special_fiber_components(d))}};
  int code = kPass;
  try {
    r.result["recession_fan"] = io::encode_fan(recession_fan(d));
    r.verdicts["recession_is_fan"] = true;
  } catch (const NotAFan &e) {
    r.verdicts["recession_is_fan"] = false;
    r.witnesses["recession_fan"] = {{"reason", e.kind()}, {"message", e.what()}};
    code = kFail;
  }
  if (!o.matrix.empty()) {
    const UnipotentAction u = parse_action(o.matrix, d.base_rank());
    r.inputs["matrix"] = io::encode_matrix(u.matrix());
    const UnipotentAction ext(u.extended());
    const auto s = is_stable(f, MatrixGroup(f.rank(), {ext.matrix()}, 1));
    r.verdicts["action_stable"] = s.stable;
    if (!s.stable) r.witnesses["action_stable"] = {{"moved_cone", f.cones()[*s.moved_cone]}};
    try {
      r.witnesses["escape"] = encode_escape(orbit_escape_witness(f, ext, f.rays().size() + 1));
    } catch (const NoRayOffAxis &e) {
      r.witnesses["escape"] = {{"reason", e.kind()}};
    } catch (const BoundExceeded &e) {
      r.witnesses["escape"] = {{"reason", e.kind()}};
    }
  }
  return code;
}

struct CounterexampleOptions {
  std::string matrix = "1 1 0 1";
  long ray_bound = 2;
  std::size_t orbit_length = 101;
  bool details = false;
};

int cmd_counterexample(const CounterexampleOptions &o, Report &r) {
  const UnipotentAction u = parse_action(o.matrix, 2);
  r.inputs["matrix"] = io::encode_matrix(u.matrix());
  r.inputs["ray_bound"] = o.ray_bound;
  r.inputs["orbit_length"] = o.orbit_length;

  LatticeVector v{0, 1};
  if (u.power_apply(v, 1) == v) v = LatticeVector{1, 0};
  const auto orbit = orbit_table(u, v, o.orbit_length);
  const std::set<LatticeVector> distinct(orbit.begin(), orbit.end());
  r.verdicts["orbit_distinct"] = distinct.size() == orbit.size();

  const auto candidates = complete_rank2_fans(o.ray_bound);
  const NoStableFanReport report = no_stable_fan_report(u, candidates);
  std::size_t not_stable = 0, escaped = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto &ref = report.refutations[i];
    not_stable += !ref.stable;
    escaped += ref.escape.has_value();
    if (!o.details && ref.refuted()) continue;
    json row = {{"index", i}, {"rays", encode_vectors(candidates[i].rays())}, {"stable", ref.stable}};
    if (ref.moved_cone) row["moved_cone"] = candidates[i].cones()[*ref.moved_cone];
    if (ref.escape) row["escape"] = encode_escape(*ref.escape);
    rows.push_back(std::move(row));
  }
  r.verdicts["all_refuted"] = report.unrefuted == 0;
  // without --details only unrefuted candidates are listed
  r.witnesses["candidates"] = std::move(rows);
  r.witnesses["not_stable"] = not_stable;
  r.witnesses["escape_witnesses"] = escaped;
  r.result = {{"orbit_start", io::encode_vector(v)},
              {"orbit", encode_vectors(orbit)},
              {"family_size", candidates.size()},
              {"refuted", candidates.size() - report.unrefuted}};
  return report.unrefuted == 0 && distinct.size() == orbit.size() ? kPass : kFail;
}

struct CoxOptions {
  std::string path;
  std::optional<long> box;
};

int cmd_cox(const CoxOptions &o, Report &r) {
  const Fan f = load_fan(o.path, r, kMaxCoxRays);
  if (f.rays().size() > kMaxCoxRays)
    throw UsageError("more than " + std::to_string(kMaxCoxRays) + " rays");
  if (o.box) r.inputs["box"] = *o.box;
  const RayData rd = ray_data(f);
  r.result["ray_order"] = encode_vectors(rd.beta);
  try {
    const auto lin = find_linearization(f, o.box);
    json transcript = json::array();
    for (const auto &p : lin.transcript) {
      json row = {{"pattern", p.pattern},
                  {"nondegenerate", p.nondegenerate},
                  {"semistable", p.semistable},
                  {"multiple", nullptr}};
      if (p.multiple) row["multiple"] = io::encode_integer(*p.multiple);
      transcript.push_back(std::move(row));
    }
    r.verdicts["found"] = true;
    r.verdicts["verified"] = lin.verified();
    r.result["rho"] = io::encode_vector(lin.rho);
    r.result["box"] = lin.box;
    r.result["candidates_tried"] = lin.candidates_tried;
    r.witnesses["transcript"] = std::move(transcript);
    return lin.verified() ? kPass : kFail;
  } catch (const SearchExhausted &e) {
    r.verdicts["found"] = false;
    r.witnesses["search"] = {{"reason", e.kind()}, {"message", e.what()}};
    return kFail;
  }
}

int exit_code_for(const Error &e) {
  return e.kind() == "EquivarianceViolation" ? kInternal : kInvalid;
}

void emit(std::ostream &out, const Report &r, int code, const std::optional<json> &error,
          std::optional<double> seconds) {
  json doc = {{"schema_version", io::kSchemaVersion},
              {"command", r.command},
              {"inputs_digest", "fnv1a64:" + io::fnv1a64(r.inputs.dump())},
              {"exit_code", code},
              {"verdicts", r.verdicts},
              {"witnesses", r.witnesses}};
  if (!r.result.is_null()) doc["result"] = r.result;
  if (error) doc["error"] = *error;
  if (seconds) doc["timing"] = {{"wall_seconds", *seconds}};
  out << doc.dump(2) << '\n';
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact fan, root datum, monoid and GIT computations", "chamber_forge"};
  app.require_subcommand(1);
  app.fallthrough();
  bool timing = false;
  app.add_flag("--timing", timing, "Add wall-clock time to the report");

  auto *fan = app.add_subcommand("fan", "Fan predicates and constructions");
  fan->require_subcommand(1);
  FanCheckOptions fco;
  auto *fan_check = fan->add_subcommand("check", "Run fan predicates (all but --stable by default)");
  fan_check->add_option("path", fco.path, "FanDocument, - for stdin")->required();
  fan_check->add_flag("--smooth", fco.smooth);
  fan_check->add_flag("--complete", fco.complete);
  fan_check->add_flag("--projective", fco.projective);
  fan_check->add_option("--stable", fco.group, "Group document");
  FanSaturateOptions fso;
  auto *fan_sat = fan->add_subcommand("saturate", "Smallest group-stable fan containing the input");
  fan_sat->add_option("path", fso.path, "FanDocument, - for stdin")->required();
  fan_sat->add_option("--group", fso.group, "Group document")->required();

  auto add_datum = [](CLI::App *sub, DatumOptions &d) {
    sub->add_option("--preset", d.preset, "A1, A2, A3, B2, C2 or G2");
    sub->add_option("--cartan", d.cartan, "Cartan matrix document");
    sub->add_option("--form", d.form, "Lattice form")->check(CLI::IsMember({"adjoint", "sc"}));
  };

  RefineOptions ro;
  auto *refine = app.add_subcommand("refine", "Smooth projective equivariant refinement");
  add_datum(refine, ro.datum);
  refine->add_option("--fan", ro.fan, "Refine this FanDocument instead of a Weyl fan");
  refine->add_option("--group", ro.group, "Group document for --fan (default trivial)");
  refine->add_option("--gamma", ro.gamma, "Extra symmetry for root data")
      ->check(CLI::IsMember({"full", "none"}));
  refine->add_option("--budget", ro.budget, "Maximum number of subdivision steps");

  auto *rootdatum = app.add_subcommand("rootdatum", "Root datum constructions");
  rootdatum->require_subcommand(1);
  DatumOptions wo, so;
  auto *weylfan = rootdatum->add_subcommand("weylfan", "Fan of Weyl chambers");
  add_datum(weylfan, wo);
  auto *strata = rootdatum->add_subcommand("strata", "Boundary strata of the adjoint form");
  add_datum(strata, so);

  MonoidOptions mo;
  auto *monoid = app.add_subcommand("monoid", "Affine monoid saturation and Hilbert bases");
  monoid->add_option("path", mo.path, "Generator document, - for stdin");
  monoid->add_option("--generators", mo.generators, "Inline generators, e.g. \"0,1;2,1\"");
  monoid->add_flag("--saturate", mo.saturate);
  monoid->add_flag("--hilbert", mo.hilbert);
  monoid->add_flag("--fiber-checks", mo.fiber);

  auto *dvr = app.add_subcommand("dvr", "Fans over a discrete valuation ring");
  dvr->require_subcommand(1);
  DvrOptions dvo;
  auto *dvr_analyze = dvr->add_subcommand("analyze", "Recession fan, special fiber, constancy");
  dvr_analyze->add_option("path", dvo.path, "FanDocument, height last")->required();
  dvr_analyze->add_option("--matrix", dvo.matrix, "Unipotent action on the base, row-major");

  CounterexampleOptions co;
  auto *counter = app.add_subcommand("counterexample", "Refute stable complete fans for a unipotent action");
  counter->add_option("--matrix", co.matrix, "2x2 matrix, row-major")->capture_default_str();
  counter->add_option("--ray-bound", co.ray_bound, "Max-norm bound on candidate rays")
      ->check(CLI::Range(1L, 2L))
      ->capture_default_str();
  counter->add_option("--orbit-length", co.orbit_length, "Orbit table entries")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}))
      ->capture_default_str();
  counter->add_flag("--details", co.details, "List every candidate with its refutation");

  CoxOptions cxo;
  auto *cox = app.add_subcommand("cox", "Linearization with semistable locus = nondegenerate locus");
  cox->add_option("path", cxo.path, "FanDocument, - for stdin")->required();
  cox->add_option("--box", cxo.box, "Max-norm bound for the search (default 3|I|)");

  Report report;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kPass;
    }
    err << e.what() << '\n';
    emit(out, report, kInvalid, json{{"kind", "UsageError"}, {"message", e.what()}}, std::nullopt);
    return kInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kInternal;
  std::optional<json> error;
  try {
    if (fan_check->parsed()) {
      report.command = "fan check";
      code = cmd_fan_check(fco, report);
    } else if (fan_sat->parsed()) {
      report.command = "fan saturate";
      code = cmd_fan_saturate(fso, report);
    } else if (refine->parsed()) {
      report.command = "refine";
      code = cmd_refine(ro, report);
    } else if (weylfan->parsed()) {
      report.command = "rootdatum weylfan";
      code = cmd_rootdatum_weylfan(wo, report);
    } else if (strata->parsed()) {
      report.command = "rootdatum strata";
      code = cmd_rootdatum_strata(so, report);
    } else if (monoid->parsed()) {
      report.command = "monoid";
      code = cmd_monoid(mo, report);
    } else if (dvr_analyze->parsed()) {
      report.command = "dvr analyze";
      code = cmd_dvr_analyze(dvo, report);
    } else if (counter->parsed()) {
      report.command = "counterexample";
      code = cmd_counterexample(co, report);
    } else if (cox->parsed()) {
      report.command = "cox";
      code = cmd_cox(cxo, report);
    }
  } catch (const Error &e) {
    code = exit_code_for(e);
    error = json{{"kind", e.kind()}, {"message", e.what()}};
  } catch (const std::invalid_argument &e) {
    code = kInvalid;
    error = json{{"kind", "InvalidArgument"}, {"message", e.what()}};
  } catch (const std::exception &e) {
    code = kInternal;
    error = json{{"kind", "InternalError"}, {"message", e.what()}};
  }
  if (error) err << report.command << ": " << (*error)["message"].get<std::string>() << '\n';
  std::optional<double> seconds;
  if (timing)
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(out, report, code, error, seconds);
  return code;
}

} // namespace chamber::cli
