#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "whankel/gallery.hpp"

namespace whankel::report {

using nlohmann::json;
using namespace diagnostics;

namespace {

void dump_to(std::string& out, const json& j, int indent) {
  const std::string pad(2 * (indent + 1), ' ');
  const std::string close(2 * indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump_to(out, it.value(), indent + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        dump_to(out, j[i], indent + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "\"" + format_number(x) + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      out_ += first ? "" : ",";
      out_ += h;
      first = false;
    }
    out_ += "\n";
  }
  Csv& cell(const std::string& s) {
    sep();
    out_ += csv_field(s);
    return *this;
  }
  Csv& cell(double x) {
    sep();
    out_ += format_number(x);
    return *this;
  }
  Csv& cell(long x) {
    sep();
    out_ += std::to_string(x);
    return *this;
  }
  Csv& cell(bool b) { return cell(std::string(b ? "true" : "false")); }
  void end() {
    out_ += "\n";
    fresh_ = true;
  }
  std::string str() const { return out_; }

 private:
  void sep() {
    if (!fresh_) out_ += ",";
    fresh_ = false;
  }
  std::string out_;
  bool fresh_ = true;
};

const char* to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Divergent: return "divergent";
    case Status::NonConvergence: return "nonconvergence";
    case Status::Failed: return "failed";
  }
  return "unknown";
}

const char* origin_name(transform::OriginCase o) {
  switch (o) {
    case transform::OriginCase::NotAtOrigin: return "not_at_origin";
    case transform::OriginCase::Undefined: return "undefined";
    case transform::OriginCase::MomentIntegral: return "moment_integral";
    case transform::OriginCase::Zero: return "zero";
  }
  return "unknown";
}

const char* family_name(unsigned f) {
  switch (f) {
    case 0: return "grid";
    case kTuned: return "tuned";
    case kScale: return "scale";
    case kDeep: return "deep";
  }
  return "unknown";
}

const char* cell_status(CellStatus s) {
  switch (s) {
    case CellStatus::Ok: return "ok";
    case CellStatus::Divergent: return "divergent";
    case CellStatus::Failed: return "failed";
  }
  return "unknown";
}

const char* kind_name(ConditionKind k) {
  switch (k) {
    case ConditionKind::Decay: return "decay";
    case ConditionKind::Finite: return "finite";
    case ConditionKind::Property: return "property";
    case ConditionKind::Parameter: return "parameter";
  }
  return "unknown";
}

const char* theorem_kind(TheoremKind k) {
  switch (k) {
    case TheoremKind::Sufficient: return "sufficient";
    case TheoremKind::Equivalence: return "equivalence";
    case TheoremKind::GMCriterion: return "gm_criterion";
  }
  return "unknown";
}

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::Everywhere: return "everywhere";
    case Domain::AwayFromOrigin: return "away_from_origin";
    case Domain::NearOrigin: return "near_origin";
  }
  return "unknown";
}

json header_json(const Header& h) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = h.command;
  if (!h.function_spec.empty()) j["function"] = h.function_spec;
  if (h.params) {
    j["params"] = {{"alpha", h.params->alpha()},
                   {"nu", h.params->nu()},
                   {"mu", h.params->mu()},
                   {"regime", transform::to_string(h.params->regime())}};
  }
  return j;
}

json fit_json(const DecayFit& f) {
  return {{"exponent", f.exponent},  {"log_prefactor", f.log_prefactor},
          {"rms_residual", f.rms_residual}, {"m_min", f.m_min},
          {"m_max", f.m_max},        {"samples", f.samples}};
}

json thresholds_json() {
  return {{"holds_margin", kHoldsMargin},
          {"fails_margin", kFailsMargin},
          {"max_rms", kMaxRms},
          {"bounded_below", kBoundedBelow}};
}

json condition_json(const Condition& c) {
  json j = {{"label", c.label},      {"description", c.description},
            {"kind", kind_name(c.kind)}, {"premise", c.premise},
            {"verdict", to_string(c.verdict)}, {"note", c.note}};
  if (c.kind == ConditionKind::Decay) {
    j["target_exponent"] = c.target_exponent;
    j["fit"] = c.fit.samples > 0 ? fit_json(c.fit) : json(nullptr);
    json s = json::array();
    for (const auto& [M, v] : c.samples) s.push_back({{"M", M}, {"value", v}});
    j["samples"] = s;
  } else if (c.kind == ConditionKind::Finite) {
    j["value"] = c.value;
  } else if (c.label == "gm") {
    j["value"] = c.value;
  }
  return j;
}

json hypotheses_json(const ConditionReport& rep) {
  const TheoremInfo& t = theorem(rep.theorem_id);
  json conds = json::array();
  for (const Condition& c : rep.conditions) conds.push_back(condition_json(c));
  return {{"theorem", rep.theorem_id},
          {"summary", t.summary},
          {"kind", theorem_kind(t.kind)},
          {"conditions", conds},
          {"premises", to_string(rep.premises())},
          {"thresholds", thresholds_json()}};
}

json scan_config_json(const ScanConfig& c) {
  json fam = json::array();
  for (unsigned f : {kTuned, kScale, kDeep})
    if (c.families & f) fam.push_back(family_name(f));
  return {{"r_min", c.r_min},       {"r_max", c.r_max},         {"r_points", c.r_points},
          {"m_k_min", c.m_k_min},   {"m_k_max", c.m_k_max},     {"n_double", c.n_double},
          {"n_infinite", c.n_infinite}, {"families", fam},      {"domain_lo", c.domain_lo},
          {"domain_hi", c.domain_hi}};
}

json scan_json(const RemainderScanReport& rep) {
  json per_m = json::array();
  for (std::size_t i = 0; i < rep.m_grid.size(); ++i) {
    per_m.push_back({{"M", rep.m_grid[i]},
                     {"sup", rep.sup[i]},
                     {"sup_double", rep.sup_double[i]},
                     {"sup_infinite", rep.sup_infinite[i]}});
  }
  json cells = json::array();
  for (const ScanCell& c : rep.cells) {
    cells.push_back({{"r", c.r},
                     {"M", c.M},
                     {"N", c.N},
                     {"family", family_name(c.family)},
                     {"remainder", c.remainder},
                     {"error_estimate", c.error_estimate},
                     {"status", cell_status(c.status)}});
  }
  return {{"r_grid", rep.r_grid},
          {"m_grid", rep.m_grid},
          {"per_m", per_m},
          {"cells", cells},
          {"fit", rep.fit_valid ? fit_json(rep.fit) : json(nullptr)},
          {"noise_floor", rep.noise_floor},
          {"verdict", to_string(rep.verdict)},
          {"reason", rep.reason},
          {"failed_cells", rep.failed_cells},
          {"divergent_cells", rep.divergent_cells}};
}

// One row per condition, shared by check and verify.
void condition_rows(Csv& csv, const ConditionReport& rep, bool section) {
  for (const Condition& c : rep.conditions) {
    if (section) csv.cell(std::string("condition"));
    csv.cell(c.label).cell(std::string(kind_name(c.kind))).cell(c.premise).cell(std::string(to_string(c.verdict)));
    if (c.kind == ConditionKind::Decay) {
      csv.cell(c.target_exponent);
      if (c.fit.samples > 0) {
        csv.cell(c.fit.exponent).cell(c.fit.rms_residual);
      } else {
        csv.cell(std::string()).cell(std::string());
      }
      csv.cell(std::string());
    } else {
      csv.cell(std::string()).cell(std::string()).cell(std::string());
      csv.cell(c.kind == ConditionKind::Finite || c.label == "gm" ? format_number(c.value) : std::string());
    }
    csv.cell(c.note);
    csv.end();
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const json& j) {
  std::string out;
  dump_to(out, j, 0);
  return out + "\n";
}

Document eval_document(const Header& h, double r, transform::TailPolicy policy, const EvalResult& e) {
  const transform::Evaluation& v = e.evaluation;
  json j = header_json(h);
  j["r"] = r;
  j["tail_policy"] = policy == transform::TailPolicy::Accelerated ? "accelerated" : "dyadic";
  j["status"] = to_string(e.status);
  j["message"] = e.message;
  j["value"] = v.value;
  j["abs_error_estimate"] = v.abs_error_estimate;
  j["converged"] = v.converged;
  j["panels_used"] = v.panels_used;
  j["origin"] = origin_name(v.origin);
  json blocks = json::array();
  for (std::size_t i = 0; i < v.dyadic_N.size(); ++i) blocks.push_back({{"N", v.dyadic_N[i]}, {"increment", v.increments[i]}});
  j["dyadic_blocks"] = blocks;

  Csv csv({"r", "value", "abs_error_estimate", "converged", "panels_used", "status"});
  csv.cell(r).cell(v.value).cell(v.abs_error_estimate).cell(v.converged).cell(v.panels_used);
  csv.cell(std::string(to_string(e.status))).end();
  return {dump(j), csv.str()};
}

Document remainder_document(const Header& h, double r, double M, double N, const PartialResult& p) {
  const transform::PartialIntegral& I = p.integral;
  json j = header_json(h);
  j["r"] = r;
  j["M"] = M;
  j["N"] = N;
  j["status"] = to_string(p.status);
  j["message"] = p.message;
  j["value"] = I.value;
  j["remainder"] = p.status == Status::Divergent ? functions::kInf : std::fabs(I.value);
  j["abs_error_estimate"] = I.abs_error_estimate;
  j["converged"] = !I.error_flag;
  j["panels_used"] = I.panels_used;

  Csv csv({"r", "M", "N", "value", "remainder", "abs_error_estimate", "converged", "status"});
  csv.cell(r).cell(M).cell(N).cell(I.value);
  csv.cell(p.status == Status::Divergent ? functions::kInf : std::fabs(I.value));
  csv.cell(I.abs_error_estimate).cell(!I.error_flag).cell(std::string(to_string(p.status))).end();
  return {dump(j), csv.str()};
}

Document scan_document(const Header& h, const ScanConfig& cfg, const RemainderScanReport& rep) {
  json j = header_json(h);
  j["config"] = scan_config_json(cfg);
  j["scan"] = scan_json(rep);
  Csv csv({"M", "N", "r", "family", "remainder", "error_estimate", "status"});
  for (const ScanCell& c : rep.cells) {
    csv.cell(c.M).cell(c.N).cell(c.r).cell(std::string(family_name(c.family))).cell(c.remainder);
    csv.cell(c.error_estimate).cell(std::string(cell_status(c.status))).end();
  }
  return {dump(j), csv.str()};
}

Document check_document(const Header& h, const ConditionReport& rep) {
  json j = header_json(h);
  j["hypotheses"] = hypotheses_json(rep);
  Csv csv({"label", "kind", "premise", "verdict", "target_exponent", "exponent", "rms_residual", "value", "note"});
  condition_rows(csv, rep, false);
  return {dump(j), csv.str()};
}

Document verify_document(const Header& h, const ScanConfig& cfg, const VerifyReport& rep) {
  json j = header_json(h);
  j["hypotheses"] = hypotheses_json(rep.hypotheses);
  j["scanned"] = rep.scanned;
  j["scan"] = rep.scanned ? scan_json(rep.scan) : json(nullptr);
  j["scan_config"] = scan_config_json(cfg);
  j["domain"] = domain_name(rep.domain);
  j["expected"] = to_string(rep.expected);
  j["verdict"] = to_string(rep.verdict);
  j["explanation"] = rep.explanation;

  Csv csv({"section", "label", "kind", "premise", "verdict", "target_exponent", "exponent", "rms_residual", "value",
           "note"});
  condition_rows(csv, rep.hypotheses, true);
  csv.cell(std::string("scan")).cell(std::string("sup_over_r")).cell(std::string("scan")).cell(false);
  if (rep.scanned) {
    csv.cell(std::string(to_string(rep.scan.verdict))).cell(std::string());
    if (rep.scan.fit_valid) {
      csv.cell(rep.scan.fit.exponent).cell(rep.scan.fit.rms_residual);
    } else {
      csv.cell(std::string()).cell(std::string());
    }
    csv.cell(rep.scan.sup.empty() ? std::string() : format_number(rep.scan.sup.back())).cell(rep.scan.reason);
  } else {
    csv.cell(std::string("not_run")).cell(std::string()).cell(std::string()).cell(std::string()).cell(std::string());
    csv.cell(std::string());
  }
  csv.end();
  csv.cell(std::string("theorem")).cell(rep.hypotheses.theorem_id).cell(std::string(domain_name(rep.domain)));
  csv.cell(false).cell(std::string(to_string(rep.verdict))).cell(std::string()).cell(std::string());
  csv.cell(std::string()).cell(std::string()).cell(rep.explanation).end();
  return {dump(j), csv.str()};
}

Document gm_document(const Header& h, const functions::GMReport& rep) {
  json j = header_json(h);
  j["lambda"] = rep.lambda;
  j["verdict"] = rep.verdict == functions::GMVerdict::Consistent ? "gm_consistent" : "gm_violated";
  j["sup_ratio"] = rep.sup_ratio;
  j["pointwise_constant"] = rep.pointwise_constant;
  json s = json::array();
  for (const auto& [x, q] : rep.ratio_samples) s.push_back({{"x", x}, {"ratio", q}});
  j["samples"] = s;
  Csv csv({"x", "ratio"});
  for (const auto& [x, q] : rep.ratio_samples) csv.cell(x).cell(q).end();
  return {dump(j), csv.str()};
}

Document gallery_document() {
  json j = header_json(Header{"gallery", {}, nullptr});
  json entries = json::array();
  Csv csv({"name", "formula", "constraints", "role", "knobs", "monotone"});
  for (const functions::GalleryEntry& e : functions::gallery_registry()) {
    entries.push_back({{"name", e.name},
                       {"formula", e.formula},
                       {"constraints", e.constraints},
                       {"role", e.role},
                       {"knobs", e.knobs},
                       {"monotone", e.monotone}});
    std::string knobs;
    for (const std::string& k : e.knobs) knobs += (knobs.empty() ? "" : ";") + k;
    csv.cell(e.name).cell(e.formula).cell(e.constraints).cell(e.role).cell(knobs).cell(e.monotone).end();
  }
  j["entries"] = entries;
  json theorems = json::array();
  for (const TheoremInfo& t : theorem_registry()) {
    theorems.push_back({{"id", t.id}, {"summary", t.summary}, {"parameters", t.parameters}, {"kind", theorem_kind(t.kind)}});
  }
  j["theorems"] = theorems;
  return {dump(j), csv.str()};
}

}  // namespace whankel::report
