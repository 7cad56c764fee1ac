#include "cesaro/reports.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace cesaro {

BoundRatioReport make_ratio(std::string check_id, std::string corpus_item,
                            ParamList params, double lhs, double rhs) {
  if (!(lhs >= 0.0) || !(rhs >= 0.0))
    throw std::invalid_argument("bound sides must be nonnegative and finite");
  if (rhs <= 0.0 && lhs > 0.0)
    throw std::invalid_argument("vanishing right-hand side with nonzero lhs");
  BoundRatioReport r;
  r.check_id = std::move(check_id);
  r.corpus_item = std::move(corpus_item);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  return r;
}

bool SuiteResult::ok() const {
  for (const auto& h : hard)
    if (!h.pass) return false;
  return true;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string packed(const ParamList& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

}  // namespace

std::string csv_ratios(const std::vector<BoundRatioReport>& rows) {
  std::string out = "check_id,corpus_item,params,lhs,rhs,ratio\n";
  for (const auto& r : rows) {
    out += r.check_id + ',' + r.corpus_item + ',' + packed(r.params) + ',' +
           format_double(r.lhs) + ',' + format_double(r.rhs) + ',' +
           format_double(r.ratio) + '\n';
  }
  return out;
}

std::string csv_weak(const std::vector<WeakTypeCurve>& rows) {
  std::string out = "corpus_item,lambda,measure,bound\n";
  for (const auto& c : rows)
    for (std::size_t i = 0; i < c.lambdas.size(); ++i)
      out += c.corpus_item + ',' + format_double(c.lambdas[i]) + ',' +
             format_double(c.measures[i]) + ',' + format_double(c.bounds[i]) +
             '\n';
  return out;
}

std::string csv_curves(const std::vector<ErrorCurve>& rows) {
  std::string out =
      "corpus_item,mode,n,sup_error,l1_error,exceed_measure,threshold\n";
  for (const auto& c : rows)
    for (std::size_t i = 0; i < c.n_values.size(); ++i)
      out += c.corpus_item + ',' + c.mode + ',' +
             std::to_string(c.n_values[i]) + ',' +
             format_double(c.sup_error[i]) + ',' +
             format_double(c.l1_error[i]) + ',' +
             format_double(c.exceed_measure[i]) + ',' +
             format_double(c.threshold) + '\n';
  return out;
}

std::string csv_hard(const std::vector<HardCheck>& rows) {
  std::string out = "check_id,detail,worst,pass\n";
  for (const auto& h : rows)
    out += h.check_id + ',' + h.detail + ',' + format_double(h.worst) + ',' +
           (h.pass ? "1" : "0") + '\n';
  return out;
}

std::string to_json(const SuiteResult& result) {
  nlohmann::json doc;
  doc["suite"] = result.suite;
  doc["ok"] = result.ok();
  auto& hard = doc["hard_checks"] = nlohmann::json::array();
  for (const auto& h : result.hard)
    hard.push_back({{"check_id", h.check_id},
                    {"detail", h.detail},
                    {"worst", h.worst},
                    {"pass", h.pass}});
  auto& ratios = doc["ratios"] = nlohmann::json::array();
  for (const auto& r : result.ratios) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    ratios.push_back({{"check_id", r.check_id},
                      {"corpus_item", r.corpus_item},
                      {"params", params},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"ratio", r.ratio}});
  }
  auto& weak = doc["weak_type_curves"] = nlohmann::json::array();
  for (const auto& c : result.weak)
    weak.push_back({{"corpus_item", c.corpus_item},
                    {"lambdas", c.lambdas},
                    {"measures", c.measures},
                    {"bounds", c.bounds}});
  auto& curves = doc["error_curves"] = nlohmann::json::array();
  for (const auto& c : result.curves)
    curves.push_back({{"corpus_item", c.corpus_item},
                      {"mode", c.mode},
                      {"n_values", c.n_values},
                      {"sup_error", c.sup_error},
                      {"l1_error", c.l1_error},
                      {"exceed_measure", c.exceed_measure},
                      {"threshold", c.threshold}});
  return doc.dump(2);
}

std::vector<std::string> write_reports(const SuiteResult& result,
                                       const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& body) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
    written.push_back(name);
  };
  emit(result.suite + ".json", to_json(result));
  if (!result.hard.empty())
    emit(result.suite + "_checks.csv", csv_hard(result.hard));
  if (!result.ratios.empty())
    emit(result.suite + "_ratios.csv", csv_ratios(result.ratios));
  if (!result.weak.empty())
    emit(result.suite + "_weak_type.csv", csv_weak(result.weak));
  if (!result.curves.empty())
    emit(result.suite + "_curves.csv", csv_curves(result.curves));
  return written;
}

}  // namespace cesaro
