// Reports: a task echo, a results tree, a verdict and timing.
//
// Structured output is JSON with sorted keys and omits timing, so a rerun
// with the same inputs and seed is byte-identical. Tables are stored as
// {"columns": [...], "rows": [[...], ...]} and printed column-aligned.
#pragma once

#include <string>

#include "json.hpp"

namespace fdalg::cli {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "fdalg 0.1.0";

enum class Verdict { Pass, Fail, Inconclusive };

// Exit codes: 0 success, 1 verification failure, 2 inconclusive, 3 input error.
int exit_code(Verdict v);
std::string verdict_name(Verdict v);

struct Report {
  std::string command;
  json params = json::object();
  json results = json::object();
  Verdict verdict = Verdict::Pass;
  double seconds = 0;

  // Downgrades the verdict: Fail wins over Inconclusive wins over Pass.
  void note(Verdict v);
};

json table(const std::vector<std::string>& columns);
void add_row(json& t, json row);

std::string render_structured(const Report& r);
std::string render_text(const Report& r);
// Writes to path, or to stdout when path is empty.
void emit_report(const Report& r, const std::string& format, const std::string& path);

}  // namespace fdalg::cli
