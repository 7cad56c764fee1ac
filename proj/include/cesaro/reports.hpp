#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

using ParamList = std::vector<std::pair<std::string, std::string>>;

/// One measured inequality: lhs against the hypothesis' right-hand side with
/// its (unknowable) constant stripped. Ratios inform; they are never pass
/// criteria by themselves.
struct BoundRatioReport {
  std::string check_id;
  std::string corpus_item;
  ParamList params;  // ordered, rendered k=v;k=v in the CSV
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// rhs must be positive unless lhs is zero too (then the ratio is 0).
BoundRatioReport make_ratio(std::string check_id, std::string corpus_item,
                            ParamList params, double lhs, double rhs);

/// Super-level-set measures of a maximal difference against the weak-type
/// envelope sqrt(||f||_1/lambda)/(1-2 delta), one point per lambda.
struct WeakTypeCurve {
  std::string corpus_item;
  std::vector<double> lambdas;
  std::vector<double> measures;
  std::vector<double> bounds;
};

/// Error decay of an averaging scheme along a sweep of lengths N.
struct ErrorCurve {
  std::string corpus_item;
  std::string mode;  // full_average | sv_average | vp
  std::vector<std::int64_t> n_values;
  std::vector<double> sup_error;
  std::vector<double> l1_error;
  std::vector<double> exceed_measure;  // measure{|error| > threshold}
  double threshold = 0.1;
};

/// An exact identity or pinned-tolerance assertion; these decide exit codes.
struct HardCheck {
  std::string check_id;
  std::string detail;
  double worst = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<HardCheck> hard;
  std::vector<BoundRatioReport> ratios;
  std::vector<WeakTypeCurve> weak;
  std::vector<ErrorCurve> curves;

  bool ok() const;
};

/// Shortest round-trip decimal form (std::to_chars); the reason two runs of
/// the same config produce byte-identical files.
std::string format_double(double v);

std::string csv_ratios(const std::vector<BoundRatioReport>& rows);
std::string csv_weak(const std::vector<WeakTypeCurve>& rows);
std::string csv_curves(const std::vector<ErrorCurve>& rows);
std::string csv_hard(const std::vector<HardCheck>& rows);
std::string to_json(const SuiteResult& result);

/// Writes <suite>.json plus one CSV per populated table into dir (created if
/// missing); returns the file names written.
std::vector<std::string> write_reports(const SuiteResult& result,
                                       const std::string& dir);

}  // namespace cesaro
