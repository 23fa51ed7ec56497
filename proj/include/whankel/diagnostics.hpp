#pragma once

#include <string>
#include <utility>
#include <vector>

#include "whankel/config.hpp"
#include "whankel/functions.hpp"
#include "whankel/transform.hpp"

namespace whankel::diagnostics {

// Least-squares line through (log M, log value).
struct DecayFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double rms_residual = 0.0;
  double m_min = 0.0;
  double m_max = 0.0;
  int samples = 0;
};

// Throws InvalidArgument for fewer than 6 samples, non-increasing M or
// non-positive values.
DecayFit decay_exponent(const std::vector<std::pair<double, double>>& samples);

// Thresholds of the o(M^a) test.
inline constexpr double kHoldsMargin = 0.1;
inline constexpr double kFailsMargin = 0.02;
inline constexpr double kMaxRms = 0.2;
// 'fails' also needs every sample ratio value/M^a above this fraction of the first.
inline constexpr double kBoundedBelow = 0.1;

enum class Verdict { Holds, Fails, Inconclusive };
const char* to_string(Verdict v) noexcept;

// Verdict of "value(M) = o(M^a)" from dyadic samples. Zero samples mean the
// quantity vanished; all-zero tails hold.
Verdict little_o(const std::vector<std::pair<double, double>>& samples, double a, DecayFit* fit = nullptr,
                 std::string* note = nullptr);

enum class ConditionKind { Decay, Finite, Property, Parameter };

struct Condition {
  std::string label;
  std::string description;
  ConditionKind kind = ConditionKind::Property;
  bool premise = true;  // false for the criterion of an equivalence
  Verdict verdict = Verdict::Inconclusive;
  double target_exponent = 0.0;                   // Decay
  DecayFit fit;                                   // Decay
  std::vector<std::pair<double, double>> samples;  // Decay: (M, value)
  double value = 0.0;                             // Finite: the integral, +inf when divergent
  std::string note;
};

struct ConditionReport {
  std::string theorem_id;
  std::vector<Condition> conditions;

  const Condition* find(const std::string& label) const;
  bool premises_hold() const;
  // Worst premise verdict: Fails beats Inconclusive beats Holds.
  Verdict premises() const;
};

enum class TheoremKind {
  Sufficient,   // premises ⇒ uniform convergence
  Equivalence,  // premises ⇒ (criterion ⇔ uniform convergence)
  GMCriterion,  // criterion ⇒ uniform; for f ≥ 0 also uniform ⇒ criterion
};

// Where the conclusion claims uniform convergence.
enum class Domain { Everywhere, AwayFromOrigin, NearOrigin };

struct TheoremInfo {
  std::string id;
  std::string summary;
  std::string parameters;  // admissible (α, ν, μ)
  TheoremKind kind = TheoremKind::Sufficient;
};

const std::vector<TheoremInfo>& theorem_registry();
const TheoremInfo& theorem(const std::string& id);  // InvalidArgument if unknown

struct DiagnosticsConfig {
  int k_min = 5;    // hypothesis samples at M = 2^k, k_min..k_max
  int k_max = 22;
  int gm_k_min = 0;  // GM check on the dyadic grid 2^gm_k_min..2^gm_k_max
  int gm_k_max = 12;
  double gm_lambda = 2.0;
  QuadratureConfig quadrature{};
};

// Throws InvalidArgument for an unregistered id or parameters outside the
// theorem's range.
ConditionReport check_hypotheses(const std::string& theorem_id, const transform::TransformParams& params,
                                 const functions::TestFunction& f, const DiagnosticsConfig& cfg = {});

enum class ScanVerdict { ConsistentWithUniform, Inconsistent, Inconclusive };
const char* to_string(ScanVerdict v) noexcept;

// Radius families appended to the log grid for every M.
enum RadiusFamily : unsigned {
  kTuned = 1u,  // (log M)^{2/(μ+ν−α−3/2)}, AboveStrip only
  kScale = 2u,  // 1/M
  kDeep = 4u,   // 1/M²
};

struct ScanConfig {
  double r_min = 1e-2;
  double r_max = 1e2;
  int r_points = 17;
  int m_k_min = 4;  // M = 2^k
  int m_k_max = 14;
  bool n_double = true;    // N = 2M
  bool n_infinite = true;  // N = ∞
  unsigned families = kTuned;
  // Only radii in [domain_lo, domain_hi] are scanned.
  double domain_lo = 0.0;
  double domain_hi = functions::kInf;
  int threads = 0;  // 0: hardware concurrency
  QuadratureConfig quadrature{};
};

enum class CellStatus { Ok, Divergent, Failed };

struct ScanCell {
  double r = 0.0;
  double M = 0.0;
  double N = 0.0;  // 2M or ∞
  unsigned family = 0;  // 0 for the log grid
  double remainder = 0.0;
  double error_estimate = 0.0;
  CellStatus status = CellStatus::Ok;
};

struct RemainderScanReport {
  std::vector<double> r_grid;
  std::vector<double> m_grid;
  std::vector<ScanCell> cells;        // ordered by M, then N, then r
  std::vector<double> sup_double;     // per M, N = 2M
  std::vector<double> sup_infinite;   // per M, N = ∞
  std::vector<double> sup;            // per M, max of both
  DecayFit fit;
  bool fit_valid = false;
  double noise_floor = 0.0;
  ScanVerdict verdict = ScanVerdict::Inconclusive;
  std::string reason;
  int failed_cells = 0;
  int divergent_cells = 0;
};

// Radii of a tuned family at M; empty when the family does not apply.
std::vector<double> family_radii(unsigned family, const transform::TransformParams& p, double M);

RemainderScanReport uniform_scan(const transform::TransformParams& params, const functions::TestFunction& f,
                                 const ScanConfig& cfg = {});

enum class TheoremVerdict { Pass, Fail, Inconclusive };
const char* to_string(TheoremVerdict v) noexcept;

struct VerifyReport {
  ConditionReport hypotheses;
  bool scanned = false;
  RemainderScanReport scan;
  Domain domain = Domain::Everywhere;
  ScanVerdict expected = ScanVerdict::Inconclusive;
  TheoremVerdict verdict = TheoremVerdict::Inconclusive;
  std::string explanation;
};

// `scan` supplies grids, threads and quadrature; radius families and the
// r-domain are chosen per theorem.
VerifyReport verify_theorem(const std::string& theorem_id, const transform::TransformParams& params,
                            const functions::TestFunction& f, const DiagnosticsConfig& cfg = {},
                            const ScanConfig& scan = {});

}  // namespace whankel::diagnostics
