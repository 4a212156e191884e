#include "cli_report.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fdalg::cli {

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return 0;
    case Verdict::Fail:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 1;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "fail";
}

void Report::note(Verdict v) {
  if (v == Verdict::Fail || (v == Verdict::Inconclusive && verdict == Verdict::Pass)) verdict = v;
}

json table(const std::vector<std::string>& columns) { return json{{"columns", columns}, {"rows", json::array()}}; }

void add_row(json& t, json row) { t["rows"].push_back(std::move(row)); }

std::string render_structured(const Report& r) {
  json j{{"command", r.command},
         {"params", r.params},
         {"results", r.results},
         {"tool", kToolVersion},
         {"verdict", verdict_name(r.verdict)}};
  return j.dump(2) + "\n";
}

namespace {

bool is_table(const json& j) {
  return j.is_object() && j.size() == 2 && j.contains("columns") && j.contains("rows") && j["columns"].is_array();
}

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_table(std::ostream& os, const json& t, const std::string& indent) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head;
  for (const auto& c : t["columns"]) head.push_back(scalar_text(c));
  cells.push_back(head);
  std::vector<bool> numeric(head.size(), true);
  for (const auto& row : t["rows"]) {
    std::vector<std::string> r;
    for (const auto& c : row) {
      if (r.size() < numeric.size() && !c.is_number() && !c.is_null()) numeric[r.size()] = false;
      r.push_back(c.is_null() ? "-" : scalar_text(c));
    }
    cells.push_back(r);
  }
  std::vector<std::size_t> width;
  for (const auto& r : cells)
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (width.size() <= k) width.push_back(0);
      width[k] = std::max(width[k], r[k].size());
    }
  for (const auto& r : cells) {
    std::string line = indent;
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::string pad(width[k] - r[k].size(), ' ');
      bool right = k < numeric.size() && numeric[k];
      if (k) line += "  ";
      line += right ? pad + r[k] : (k + 1 < r.size() ? r[k] + pad : r[k]);
    }
    os << line << "\n";
  }
}

void render_tree(std::ostream& os, const json& j, const std::string& indent) {
  for (const auto& [k, v] : j.items()) {
    if (is_table(v)) {
      os << indent << k << ":\n";
      render_table(os, v, indent + "  ");
    } else if (v.is_object()) {
      os << indent << k << ":\n";
      render_tree(os, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
      os << indent << k << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_object()) {
          os << indent << "  [" << i << "]\n";
          render_tree(os, v[i], indent + "    ");
        } else {
          os << indent << "  " << v[i].dump() << "\n";
        }
      }
    } else {
      os << indent << k << ": " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.command;
  for (const auto& [k, v] : r.params.items()) os << " " << k << "=" << scalar_text(v);
  os << "\n";
  render_tree(os, r.results, "  ");
  os << "verdict: " << verdict_name(r.verdict) << "\n";
  os << "time: " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
  return os.str();
}

void emit_report(const Report& r, const std::string& format, const std::string& path) {
  std::string body = format == "structured" ? render_structured(r) : render_text(r);
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  out << body;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace fdalg::cli
