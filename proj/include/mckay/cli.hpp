#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mckay/abelian.hpp"
#include "mckay/ages.hpp"
#include "mckay/class_group.hpp"
#include "mckay/error.hpp"
#include "mckay/expression.hpp"
#include "mckay/group.hpp"
#include "mckay/invariants.hpp"

namespace mckay::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "mckay-report/1";

enum class Mode { analyze, age, invariant, check, sweep };

inline Mode mode_from_string(std::string_view s) {
  if (s == "analyze") return Mode::analyze;
  if (s == "age") return Mode::age;
  if (s == "invariant") return Mode::invariant;
  if (s == "check") return Mode::check;
  if (s == "sweep") return Mode::sweep;
  throw DomainError("unknown mode '" + std::string(s) + "'");
}

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::analyze: return "analyze";
    case Mode::age: return "age";
    case Mode::invariant: return "invariant";
    case Mode::check: return "check";
    case Mode::sweep: return "sweep";
  }
  return "?";
}

struct JobOptions {
  std::size_t max_group_size = kDefaultMaxGroupSize;
  std::optional<long> degree_bound;  // defaults to |G|
  long twist = 1;
};

struct JobSpec {
  std::size_t dimension = 0;
  std::vector<CycMatrix> generators;
  std::optional<std::vector<long>> character;
  Mode mode = Mode::analyze;
  JobOptions options;
};

/// Malformed job document; the message names the offending field.
class JobError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline Cyclotomic parse_entry(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return Cyclotomic(static_cast<long>(value.get<long long>()));
  if (!value.is_string()) throw JobError(where + ": entry must be a string expression or an integer");
  try {
    return parse_cyclotomic(value.get<std::string>());
  } catch (const ParseError& e) {
    throw JobError(where + ": " + e.what());
  }
}

}  // namespace detail

/// Parses a job document:
///
///   { "dimension": 4,
///     "generators": [ [["-1","0",...], ...], ... ],
///     "character": [1] }
///
/// Entries are cyclotomic expressions (or plain integers).
inline JobSpec parse_job(std::string_view text, Mode mode = Mode::analyze, JobOptions options = {}) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JobError(std::string("malformed job document: ") + e.what());
  }
  if (!doc.is_object()) throw JobError("job document must be an object");
  JobSpec job;
  job.mode = mode;
  job.options = options;
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() || doc["dimension"].get<long>() <= 0) {
    throw JobError("dimension: a positive integer is required");
  }
  job.dimension = doc["dimension"].get<std::size_t>();
  if (!doc.contains("generators") || !doc["generators"].is_array()) throw JobError("generators: a list is required");
  const Json& gens = doc["generators"];
  if (gens.empty()) throw JobError("generators: at least one generator is required");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string where = "generators[" + std::to_string(g) + "]";
    const Json& rows = gens[g];
    if (!rows.is_array() || rows.size() != job.dimension) {
      throw JobError(where + ": expected " + std::to_string(job.dimension) + " rows");
    }
    std::vector<std::vector<Cyclotomic>> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Json& row = rows[i];
      const std::string row_where = where + "[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != job.dimension) {
        throw JobError(row_where + ": expected " + std::to_string(job.dimension) + " entries");
      }
      std::vector<Cyclotomic> parsed;
      for (std::size_t j = 0; j < row.size(); ++j) {
        parsed.push_back(detail::parse_entry(row[j], row_where + "[" + std::to_string(j) + "]"));
      }
      entries.push_back(std::move(parsed));
    }
    job.generators.push_back(CycMatrix::from_rows(entries));
  }
  if (doc.contains("character")) {
    const Json& chi = doc["character"];
    if (!chi.is_array()) throw JobError("character: a list of integers is required");
    std::vector<long> exps;
    for (const auto& e : chi) {
      if (!e.is_number_integer()) throw JobError("character: a list of integers is required");
      exps.push_back(e.get<long>());
    }
    job.character = exps;
  }
  return job;
}

inline JobSpec load_job(const std::string& path, Mode mode = Mode::analyze, JobOptions options = {}) {
  std::ifstream in(path);
  if (!in) throw JobError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_job(buf.str(), mode, options);
}

struct RunResult {
  Json report;
  int exit_code = 0;
};

namespace detail {

inline Json matrix_json(const CycMatrix& m) { return Json(m.render_rows()); }

inline Json structure_json(const AbelianStructure& s) {
  return Json{{"invariant_factors", s.invariant_factors}, {"rendered", s.render()}, {"order", s.order()}};
}

inline std::string class_group_string(std::size_t rank, const AbelianStructure& torsion) {
  std::string out;
  if (rank > 0) out = "Z^" + std::to_string(rank);
  if (!torsion.is_trivial()) out += (out.empty() ? "" : " + ") + torsion.render();
  return out.empty() ? "0" : out;
}

inline Json group_json(const FiniteMatrixGroup& g) {
  std::vector<std::size_t> sizes;
  for (const auto& c : g.classes().classes) sizes.push_back(c.size());
  return Json{{"order", g.order()},
              {"dimension", g.dim()},
              {"conductor", g.conductor()},
              {"exponent", g.exponent()},
              {"working_conductor", working_conductor(g)},
              {"special_linear", g.is_special_linear()},
              {"class_count", g.classes().count()},
              {"class_sizes", sizes}};
}

inline Json age_json(const FiniteMatrixGroup& g, const AgeRecord& rec) {
  return Json{{"element", rec.element},
              {"matrix", matrix_json(g.element(rec.element))},
              {"order", rec.order},
              {"multiplicities", rec.multiplicities},
              {"age", rec.age.get_str()},
              {"junior", rec.is_junior},
              {"reflection", rec.is_reflection},
              {"weights", rec.weights}};
}

inline Json analyze(const FiniteMatrixGroup& g, const ClassGroupReport& r) {
  Json juniors = Json::array();
  for (std::size_t i = 0; i < r.junior_representatives.size(); ++i) {
    const ElementId rep = r.junior_representatives[i];
    const AgeRecord rec = age_record(g, rep, r.twist);
    juniors.push_back(Json{{"divisor", "E" + std::to_string(i + 1)},
                           {"element", rep},
                           {"matrix", matrix_json(g.element(rep))},
                           {"order", rec.order},
                           {"weights", rec.weights},
                           {"class_size", g.classes().classes[g.classes().class_of[rep]].size()}});
  }
  Json free_images = Json::array();
  for (const auto& f : r.pushforward.free_images) {
    free_images.push_back(Json{{"junior_representative", f.junior_representative},
                               {"image", f.image},
                               {"matrix", matrix_json(g.element(f.image))}});
  }
  Json torsion_images = Json::array();
  for (const auto& t : r.pushforward.torsion_images) {
    torsion_images.push_back(Json{{"order", t.order}, {"image", t.image}, {"matrix", matrix_json(g.element(t.image))}});
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"twist", r.twist.t},
              {"reflection_subgroup_order", r.reflection_subgroup_order},
              {"cl_quotient", structure_json(r.cl_quotient)},
              {"abelianization", structure_json(r.abelianization)},
              {"commutator_subgroup_order", r.commutator_order},
              {"junior_class_count", r.junior_class_count},
              {"junior_classes", juniors},
              {"junior_element_count", r.junior_elements.size()},
              {"junior_subgroup_order", r.junior_subgroup_order},
              {"class_group",
               Json{{"free_rank", r.free_rank},
                    {"torsion", structure_json(r.torsion)},
                    {"rendered", class_group_string(r.free_rank, r.torsion)},
                    {"free", r.free}}},
              {"hbar", structure_json(r.hbar)},
              {"pushforward", Json{{"free", free_images}, {"torsion", torsion_images}}},
              {"checks", checks}};
}

inline Json sweep_json(const GaloisSweep& s) {
  Json rows = Json::array();
  for (const auto& row : s.rows) {
    rows.push_back(Json{{"twist", row.twist},
                        {"equivalent_twists", row.equivalent_twists},
                        {"junior_class_count", row.junior_class_count},
                        {"junior_elements", row.junior_elements},
                        {"junior_subgroup_order", row.junior_subgroup_order},
                        {"torsion", structure_json(row.torsion)}});
  }
  return Json{{"working_conductor", s.working_conductor}, {"consistent", s.consistent}, {"rows", rows}};
}

struct CheckLog {
  Json entries = Json::array();
  bool ok = true;

  void add(const std::string& name, bool passed, Json witness) {
    ok = ok && passed;
    entries.push_back(Json{{"name", name}, {"passed", passed}, {"witness", std::move(witness)}});
  }
};

inline Json run_checks(const FiniteMatrixGroup& g, const JobSpec& job, bool& ok) {
  CheckLog log;
  const GaloisTwist twist{job.options.twist};
  const ClassGroupReport report = terminalization_class_group(g, twist);
  for (const auto& c : report.checks) log.add("report." + c.name, c.passed, c.detail);

  const GaloisSweep sweep = galois_sweep(g);
  log.add("galois_sweep.invariance", sweep.consistent,
          Json{{"twists", sweep.rows.size()}, {"junior_class_count", sweep.rows.front().junior_class_count},
               {"torsion", sweep.rows.front().torsion.render()}});

  const Abelianization ab = abelianize(g);
  const JuniorClasses juniors = junior_classes(g, twist);
  const std::vector<GradingData> gradings = junior_gradings(g, juniors, twist);
  const Subgroup h = junior_subgroup(g, juniors);
  const long bound = job.options.degree_bound.value_or(static_cast<long>(g.order()));
  for (const Character& chi : all_characters(ab.basis)) {
    const Json label = chi.exponents;
    const auto f = relative_invariant(g, ab, chi, bound);
    if (!f) {
      log.add("relative_invariant.exists", false, Json{{"character", label}, {"degree_bound", bound}});
      continue;
    }
    log.add("relative_invariant.exists", true, Json{{"character", label}, {"polynomial", f->render()}});
    const auto entries = check_congruence_lemma(g, ab, gradings, *f);
    bool congruent = true;
    Json detail = Json::array();
    for (const auto& e : entries) {
      congruent = congruent && e.holds;
      detail.push_back(Json{{"representative", e.representative},
                            {"order", e.order},
                            {"valuation", e.valuation},
                            {"graded_degree", e.graded_degree}});
    }
    log.add("valuation_congruence", congruent, Json{{"character", label}, {"entries", detail}});
    const MembershipCheck m = check_h_membership(g, ab, h, gradings, *f);
    log.add("h_membership", m.consistent(),
            Json{{"character", label}, {"divisible", m.divisible}, {"h_invariant", m.h_invariant}});
  }
  ok = log.ok;
  return log.entries;
}

}  // namespace detail

inline Json error_report(const std::string& kind, const std::string& message) {
  return Json{{"schema", kSchema}, {"error", Json{{"kind", kind}, {"message", message}}}};
}

/// Runs one job. Exit codes: 0 success, 1 a check failed, 2 an error.
inline RunResult run(const JobSpec& job) {
  RunResult result;
  Json& out = result.report;
  out["schema"] = kSchema;
  out["mode"] = to_string(job.mode);
  Json gens = Json::array();
  for (const auto& m : job.generators) gens.push_back(detail::matrix_json(m));
  out["input"] = Json{{"dimension", job.dimension}, {"generators", gens}};
  try {
    for (const auto& m : job.generators) {
      if (m.dim() != job.dimension) throw DimensionError("generator dimension does not match the declared dimension");
    }
    const FiniteMatrixGroup g = FiniteMatrixGroup::close(job.generators, job.options.max_group_size);
    out["group"] = detail::group_json(g);
    const GaloisTwist twist{job.options.twist};
    switch (job.mode) {
      case Mode::analyze: {
        out["cl_quotient"] = detail::structure_json(class_group_of_quotient(g));
        out["terminalization"] = detail::analyze(g, terminalization_class_group(g, twist));
        const bool ok = std::all_of(out["terminalization"]["checks"].begin(), out["terminalization"]["checks"].end(),
                                    [](const Json& c) { return c["passed"].get<bool>(); });
        result.exit_code = ok ? 0 : 1;
        break;
      }
      case Mode::age: {
        const auto records = age_records(g, twist);
        Json classes = Json::array();
        for (std::size_t c = 0; c < g.classes().count(); ++c) {
          Json entry = detail::age_json(g, records[g.classes().representative(c)]);
          entry["class_size"] = g.classes().classes[c].size();
          classes.push_back(entry);
        }
        out["twist"] = twist.t;
        out["classes"] = classes;
        break;
      }
      case Mode::invariant: {
        const Abelianization ab = abelianize(g);
        const Character chi = validate_character(
            ab.quotient, ab.basis,
            Character{job.character.value_or(std::vector<long>(ab.basis.structure.invariant_factors.size(), 0))});
        const long bound = job.options.degree_bound.value_or(static_cast<long>(g.order()));
        out["abelianization"] = detail::structure_json(ab.basis.structure);
        out["character"] = chi.exponents;
        out["degree_bound"] = bound;
        const auto f = relative_invariant(g, ab, chi, bound);
        if (f) {
          out["polynomial"] = f->render();
          out["degree"] = f->degree();
        } else {
          out["polynomial"] = nullptr;
          result.exit_code = 1;
        }
        break;
      }
      case Mode::check: {
        bool ok = true;
        out["checks"] = detail::run_checks(g, job, ok);
        out["passed"] = ok;
        result.exit_code = ok ? 0 : 1;
        break;
      }
      case Mode::sweep: {
        const GaloisSweep s = galois_sweep(g);
        out["sweep"] = detail::sweep_json(s);
        result.exit_code = s.consistent ? 0 : 1;
        break;
      }
    }
  } catch (const GroupTooLarge& e) {
    out["error"] = Json{{"kind", "group_too_large"}, {"message", e.what()}, {"partial_count", e.partial_count()}};
    result.exit_code = 2;
  } catch (const NotSpecialLinear& e) {
    out["error"] = Json{{"kind", "not_special_linear"}, {"message", e.what()}};
    result.exit_code = 2;
  } catch (const ConsistencyError& e) {
    out["error"] = Json{{"kind", "consistency"}, {"message", e.what()}};
    result.exit_code = 1;
  } catch (const Error& e) {
    out["error"] = Json{{"kind", "error"}, {"message", e.what()}};
    result.exit_code = 2;
  }
  return result;
}

namespace detail {

inline bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  return std::all_of(j.begin(), j.end(), [](const Json& e) { return is_flat(e); });
}

inline std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline std::string flat_text(const Json& j) {
  if (!j.is_array()) return scalar_text(j);
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + flat_text(j[i]);
  return out + "]";
}

inline void render_text(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_flat(value)) {
        out += pad + key + ": " + flat_text(value) + "\n";
      } else {
        out += pad + key + ":\n";
        render_text(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_flat(e)) {
        out += pad + "- " + flat_text(e) + "\n";
      } else {
        out += pad + "-\n";
        render_text(e, indent + 2, out);
      }
    }
  } else {
    out += pad + scalar_text(j) + "\n";
  }
}

}  // namespace detail

/// Human-readable rendering of a report, derived from its structured form.
inline std::string render_text(const Json& report) {
  std::string out;
  detail::render_text(report, 0, out);
  return out;
}

}  // namespace mckay::cli
