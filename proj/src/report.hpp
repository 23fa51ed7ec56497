#pragma once

#include <string>

#include "json.hpp"
#include "whankel/diagnostics.hpp"
#include "whankel/functions.hpp"
#include "whankel/transform.hpp"

// JSON and CSV renderings of results. Both go through format_number, so the
// two formats carry the same digits.
namespace whankel::report {

inline constexpr int kSchemaVersion = 1;

struct Document {
  std::string json;
  std::string csv;
};

// %.17g; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double x);

// Sorted keys, two-space indent, numbers via format_number (non-finite
// numbers become strings).
std::string dump(const nlohmann::json& j);

// Context written into every document.
struct Header {
  std::string command;
  std::string function_spec;  // empty when no function is involved
  const transform::TransformParams* params = nullptr;
};

enum class Status { Ok, Divergent, NonConvergence, Failed };

struct EvalResult {
  Status status = Status::Ok;
  std::string message;
  transform::Evaluation evaluation;
};

struct PartialResult {
  Status status = Status::Ok;
  std::string message;
  transform::PartialIntegral integral;
};

Document eval_document(const Header& h, double r, transform::TailPolicy policy, const EvalResult& e);
Document remainder_document(const Header& h, double r, double M, double N, const PartialResult& p);
Document scan_document(const Header& h, const diagnostics::ScanConfig& cfg,
                       const diagnostics::RemainderScanReport& rep);
Document check_document(const Header& h, const diagnostics::ConditionReport& rep);
Document verify_document(const Header& h, const diagnostics::ScanConfig& cfg, const diagnostics::VerifyReport& rep);
Document gm_document(const Header& h, const functions::GMReport& rep);
Document gallery_document();

}  // namespace whankel::report
