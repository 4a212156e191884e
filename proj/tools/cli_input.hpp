// Line-oriented input grammar for algebras, modules, gradings and phi sets.
// See docs/input_format.md.
#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "fdalg/graded.hpp"

namespace fdalg::cli {

class InputError : public std::runtime_error {
 public:
  InputError(const std::string& source, std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct ParsedInput {
  std::optional<Algebra> algebra;
  std::optional<GradedAlgebra> graded;
  std::optional<Module> module;
  std::optional<std::vector<std::size_t>> phi;
  std::string source;
};

// "q" or "fp:<p>".
Field parse_field(const std::string& text);
// "0,1,2"; sorted and deduplicated, admissibility is not checked.
std::vector<std::size_t> parse_phi(const std::string& text);

ParsedInput parse_input(std::istream& in, Field f, const std::string& source = "<input>");
ParsedInput parse_input_file(const std::string& path, Field f);

// The grammar form of an algebra (and optionally a module over it); parses
// back to the same structure constants and actions.
std::string format_algebra(const Algebra& a);
std::string format_module(const Module& m);

}  // namespace fdalg::cli
