// Named end-to-end pipelines. Each scenario resolves its parameters (echoed in
// the report), runs, and sets the verdict from the checks it performs.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cli_report.hpp"
#include "fdalg/rational.hpp"

namespace fdalg::cli {

class ParamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Params {
 public:
  explicit Params(std::map<std::string, std::string> kv = {}) : kv_(std::move(kv)) {}

  void set(const std::string& k, const std::string& v) { kv_[k] = v; }
  bool has(const std::string& k) const { return kv_.count(k) != 0; }

  std::size_t size(const std::string& k, std::size_t def);
  std::uint64_t seed(std::uint64_t def = 0xC0FFEE);
  // "3-6" or "3,4,5"; sorted and deduplicated.
  std::vector<std::size_t> list(const std::string& k, const std::string& def);
  // Sets separated by ':', e.g. "0:0,1".
  std::vector<std::vector<std::size_t>> sets(const std::string& k, const std::string& def);
  Rational rational(const std::string& k, const std::string& def);
  std::string text(const std::string& k, const std::string& def, const std::vector<std::string>& allowed);

  // Throws on any key that was never read.
  void finish() const;
  const json& echo() const { return echo_; }

 private:
  std::string take(const std::string& k, const std::string& def);

  std::map<std::string, std::string> kv_;
  std::map<std::string, bool> used_;
  json echo_ = json::object();
};

struct Scenario {
  std::string name;
  std::string summary;
  std::function<void(Params&, Report&)> run;
};

const std::vector<Scenario>& scenarios();
// Throws ParamError for unknown names or parameters.
Report run_scenario(const std::string& name, Params params);

std::string phi_text(const std::vector<std::size_t>& phi);

}  // namespace fdalg::cli
