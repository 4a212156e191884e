#include "cli_input.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace fdalg::cli {

InputError::InputError(const std::string& source, std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

Field parse_field(const std::string& text) {
  if (text == "q" || text == "Q") return Field::rationals();
  if (text.rfind("fp:", 0) == 0) {
    std::size_t pos = 0;
    unsigned long p = 0;
    try {
      p = std::stoul(text.substr(3), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size() - 3) throw std::invalid_argument("malformed field '" + text + "'");
    return Field::prime(static_cast<std::uint32_t>(p));
  }
  throw std::invalid_argument("unknown field '" + text + "' (expected q or fp:<p>)");
}

std::vector<std::size_t> parse_phi(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed phi set '" + text + "'");
    out.push_back(std::stoul(item));
  }
  if (out.empty()) throw std::invalid_argument("empty phi set");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

class Parser {
  enum class Kind { None, Constants, Named, Quiver };
  struct Summand {
    std::size_t line = 0;
    std::string form;
    std::size_t dim = 0, param = 0, param_column = 0;
    std::map<std::size_t, std::pair<std::size_t, Mat>> act;  // basis -> (line, matrix)
    std::map<std::size_t, std::size_t> act_columns;
  };

 public:
  Parser(std::istream& in, Field f, std::string source) : in_(in), field_(f), source_(std::move(source)) {}

  ParsedInput run() {
    std::string line;
    while (next_line(line)) {
      auto toks = tokenize(line);
      if (toks.empty()) continue;
      statement(toks);
    }
    return finish();
  }

 private:
  [[noreturn]] void fail(std::size_t column, const std::string& msg) const {
    throw InputError(source_, line_no_, column, msg);
  }
  [[noreturn]] void fail_at(std::size_t line, const std::string& msg) const { throw InputError(source_, line, 1, msg); }

  bool next_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    return true;
  }

  void arity(const std::vector<Token>& t, std::size_t n) const {
    if (t.size() < n) fail(t.back().column + t.back().text.size(), "'" + t[0].text + "' expects " + std::to_string(n - 1) + " argument(s)");
    if (t.size() > n) fail(t[n].column, "unexpected token '" + t[n].text + "'");
  }

  std::size_t number(const Token& t) const {
    if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
      fail(t.column, "expected a non-negative integer, got '" + t.text + "'");
    try {
      return std::stoul(t.text);
    } catch (const std::exception&) {
      fail(t.column, "integer out of range '" + t.text + "'");
    }
  }

  Rational scalar(const Token& t) const {
    try {
      return field_.reduce(Rational::parse(t.text));
    } catch (const std::exception& e) {
      fail(t.column, e.what());
    }
  }

  void statement(const std::vector<Token>& t) {
    const std::string& kw = t[0].text;
    if (kw == "algebra") return algebra_header(t);
    if (kw == "sc") return sc(t);
    if (kw == "unit") return unit(t);
    if (kw == "label") return label(t);
    if (kw == "quiver") return quiver(t);
    if (kw == "arrow") return arrow(t);
    if (kw == "rel") return rel(t);
    if (kw == "cutoff") return cutoff(t);
    if (kw == "grading") return grading(t);
    if (kw == "grade") return grade(t);
    if (kw == "module") return module_header(t);
    if (kw == "act") return act(t);
    if (kw == "phi") return phi(t);
    fail(t[0].column, "unknown keyword '" + kw + "'");
  }

  void no_algebra_yet(const Token& t) const {
    if (kind_ != Kind::None) fail(t.column, "only one algebra per input");
  }

  void algebra_header(const std::vector<Token>& t) {
    no_algebra_yet(t[0]);
    if (t.size() < 2) fail(t[0].column, "'algebra' expects a form: dim, nakayama, liu-schulz or group");
    algebra_line_ = line_no_;
    const std::string& form = t[1].text;
    arity(t, 3);
    if (form == "dim") {
      kind_ = Kind::Constants;
      dim_ = number(t[2]);
      if (dim_ == 0) fail(t[2].column, "algebra dimension must be positive");
      return;
    }
    if (!field_.is_rational()) fail(t[1].column, "named algebras are defined over Q only");
    kind_ = Kind::Named;
    try {
      if (form == "nakayama") {
        named_ = nakayama(number(t[2]));
      } else if (form == "liu-schulz") {
        named_q_ = scalar(t[2]);
        named_ = liu_schulz(*named_q_);
      } else if (form == "group") {
        named_ = group_algebra(number(t[2]));
      } else {
        fail(t[1].column, "unknown algebra form '" + form + "'");
      }
    } catch (const AlgebraError& e) {
      fail(t[2].column, e.what());
    }
    named_form_ = form;
  }

  void require_kind(const Token& t, Kind k, const char* what) const {
    if (kind_ != k) fail(t.column, std::string("'") + t.text + "' is only valid after " + what);
  }

  std::size_t basis_index(const Token& t) const {
    std::size_t i = number(t);
    if (i >= dim_) fail(t.column, "basis index " + t.text + " out of range (dimension " + std::to_string(dim_) + ")");
    return i;
  }

  void sc(const std::vector<Token>& t) {
    require_kind(t[0], Kind::Constants, "'algebra dim'");
    arity(t, 5);
    constants_.push_back({basis_index(t[1]), basis_index(t[2]), basis_index(t[3]), scalar(t[4])});
  }

  void unit(const std::vector<Token>& t) {
    require_kind(t[0], Kind::Constants, "'algebra dim'");
    if (unit_) fail(t[0].column, "duplicate 'unit'");
    arity(t, dim_ + 1);
    SparseVec u;
    for (std::size_t i = 0; i < dim_; ++i) {
      Rational c = scalar(t[i + 1]);
      if (!c.is_zero()) u.push_back({static_cast<std::uint32_t>(i), c});
    }
    unit_ = u;
  }

  void label(const std::vector<Token>& t) {
    require_kind(t[0], Kind::Constants, "'algebra dim'");
    arity(t, 3);
    labels_.resize(dim_);
    labels_[basis_index(t[1])] = t[2].text;
  }

  void quiver(const std::vector<Token>& t) {
    no_algebra_yet(t[0]);
    arity(t, 2);
    if (!field_.is_rational()) fail(t[0].column, "quiver algebras are defined over Q only");
    kind_ = Kind::Quiver;
    algebra_line_ = line_no_;
    quiver_.vertices = number(t[1]);
    if (quiver_.vertices == 0) fail(t[1].column, "a quiver needs at least one vertex");
  }

  void arrow(const std::vector<Token>& t) {
    require_kind(t[0], Kind::Quiver, "'quiver'");
    arity(t, 4);
    if (arrow_index_.count(t[1].text)) fail(t[1].column, "duplicate arrow '" + t[1].text + "'");
    std::size_t s = number(t[2]), d = number(t[3]);
    if (s >= quiver_.vertices) fail(t[2].column, "vertex out of range");
    if (d >= quiver_.vertices) fail(t[3].column, "vertex out of range");
    arrow_index_[t[1].text] = quiver_.arrows.size();
    quiver_.arrows.push_back({t[1].text, s, d});
  }

  Path path(const Token& t) const {
    Path p;
    if (!t.text.empty() && t.text[0] == '@') {
      p.vertex = number({t.text.substr(1), t.column + 1});
      if (p.vertex >= quiver_.vertices) fail(t.column, "vertex out of range");
      return p;
    }
    std::stringstream ss(t.text);
    std::string a;
    while (std::getline(ss, a, '.')) {
      auto it = arrow_index_.find(a);
      if (it == arrow_index_.end()) fail(t.column, "unknown arrow '" + a + "' in path '" + t.text + "'");
      p.arrows.push_back(it->second);
    }
    if (p.arrows.empty()) fail(t.column, "empty path");
    p.vertex = quiver_.arrows[p.arrows[0]].source;
    return p;
  }

  void rel(const std::vector<Token>& t) {
    require_kind(t[0], Kind::Quiver, "'quiver'");
    if (t.size() < 3 || t.size() % 2 == 0) fail(t[0].column, "'rel' expects pairs of <coefficient> <path>");
    std::vector<PathTerm> terms;
    for (std::size_t i = 1; i < t.size(); i += 2) terms.push_back({scalar(t[i]), path(t[i + 1])});
    quiver_.relations.push_back(std::move(terms));
  }

  void cutoff(const std::vector<Token>& t) {
    require_kind(t[0], Kind::Quiver, "'quiver'");
    arity(t, 2);
    quiver_.cutoff = number(t[1]);
    has_cutoff_ = true;
  }

  void grading(const std::vector<Token>& t) {
    arity(t, 3);
    if (grading_) fail(t[0].column, "duplicate 'grading'");
    std::size_t b = number(t[2]);
    if (t[1].text == "truncated") grading_ = Grading::truncated(b);
    else if (t[1].text == "cyclic") {
      if (b == 0) fail(t[2].column, "cyclic grading needs a positive order");
      grading_ = Grading::cyclic(b);
    } else fail(t[1].column, "unknown grading '" + t[1].text + "' (expected truncated or cyclic)");
    grading_line_ = line_no_;
  }

  void grade(const std::vector<Token>& t) {
    arity(t, 3);
    std::size_t i = number(t[1]);
    if (degrees_.count(i)) fail(t[1].column, "duplicate degree for basis index " + t[1].text);
    degrees_[i] = {number(t[2]), line_no_};
  }

  void module_header(const std::vector<Token>& t) {
    if (t.size() < 2) fail(t[0].column, "'module' expects a form: dim, regular, truncated or liu-schulz-ideal");
    Summand s;
    s.line = line_no_;
    s.form = t[1].text;
    if (s.form == "dim") {
      arity(t, 3);
      s.dim = number(t[2]);
    } else if (s.form == "regular") {
      arity(t, 2);
    } else if (s.form == "truncated" || s.form == "liu-schulz-ideal") {
      arity(t, 3);
      s.param = number(t[2]);
      s.param_column = t[2].column;
    } else {
      fail(t[1].column, "unknown module form '" + s.form + "'");
    }
    summands_.push_back(s);
  }

  void act(const std::vector<Token>& t) {
    if (summands_.empty() || summands_.back().form != "dim") fail(t[0].column, "'act' is only valid after 'module dim'");
    arity(t, 2);
    Summand& s = summands_.back();
    std::size_t b = number(t[1]);
    if (s.act.count(b)) fail(t[1].column, "duplicate action for basis index " + t[1].text);
    std::vector<std::vector<Rational>> rows;
    std::size_t header = line_no_;
    std::string line;
    while (rows.size() < s.dim) {
      if (!next_line(line)) fail_at(header, "action matrix ends early: expected " + std::to_string(s.dim) + " rows");
      auto r = tokenize(line);
      if (r.empty()) continue;
      if (r.size() != s.dim)
        fail(r.size() > s.dim ? r[s.dim].column : r.back().column,
             "matrix row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(s.dim));
      std::vector<Rational> row;
      for (const auto& x : r) row.push_back(scalar(x));
      rows.push_back(std::move(row));
    }
    s.act[b] = {header, Mat::from_dense(field_, rows, s.dim)};
    s.act_columns[b] = t[1].column;
  }

  void phi(const std::vector<Token>& t) {
    arity(t, 2);
    if (phi_) fail(t[0].column, "duplicate 'phi'");
    try {
      phi_ = parse_phi(t[1].text);
    } catch (const std::exception& e) {
      fail(t[1].column, e.what());
    }
  }

  Algebra build_algebra() {
    try {
      switch (kind_) {
        case Kind::Named:
          return *named_;
        case Kind::Constants:
          if (!unit_) fail_at(algebra_line_, "algebra is missing its 'unit' line");
          for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i].empty()) labels_[i] = "e" + std::to_string(i);
          return Algebra::from_structure_constants(field_, dim_, constants_, *unit_, labels_);
        case Kind::Quiver:
          if (!has_cutoff_) fail_at(algebra_line_, "quiver is missing its 'cutoff' line");
          return from_quiver(quiver_);
        case Kind::None:
          break;
      }
    } catch (const AlgebraError& e) {
      fail_at(algebra_line_, e.what());
    } catch (const FieldMismatch& e) {
      fail_at(algebra_line_, e.what());
    }
    fail_at(1, "no algebra given");
  }

  Module build_summand(const Algebra& a, const Summand& s) {
    try {
      if (s.form == "regular") return regular_module(a);
      if (s.form == "truncated") {
        if (named_form_ != "nakayama") fail_at(s.line, "'module truncated' needs 'algebra nakayama'");
        return truncated_module(a, s.param);
      }
      if (s.form == "liu-schulz-ideal") {
        if (named_form_ != "liu-schulz") fail_at(s.line, "'module liu-schulz-ideal' needs 'algebra liu-schulz'");
        return liu_schulz_ideal(a, *named_q_, static_cast<int>(s.param));
      }
      std::vector<Mat> gens;
      for (std::size_t g : a.generators()) {
        auto it = s.act.find(g);
        if (it == s.act.end())
          fail_at(s.line, "module is missing the action of generator e" + std::to_string(g));
        gens.push_back(it->second.second);
      }
      for (const auto& [b, m] : s.act)
        if (b >= a.dim()) throw InputError(source_, m.first, s.act_columns.at(b), "basis index out of range");
      Module m = Module::from_generator_action(a, s.dim, gens);
      for (const auto& [b, given] : s.act)
        if (m.act(b) != given.second)
          fail_at(given.first, "action of e" + std::to_string(b) + " disagrees with the generators");
      return m;
    } catch (const ModuleError& e) {
      fail_at(s.line, e.what());
    } catch (const AlgebraError& e) {
      fail_at(s.line, e.what());
    }
  }

  ParsedInput finish() {
    ParsedInput out;
    out.source = source_;
    out.phi = phi_;
    if (kind_ == Kind::None) {
      if (!summands_.empty()) fail_at(summands_[0].line, "module given without an algebra");
      if (grading_ || !degrees_.empty()) fail_at(grading_line_ ? grading_line_ : degrees_.begin()->second.second,
                                                 "grading given without an algebra");
      return out;
    }
    Algebra a = build_algebra();
    out.algebra = a;
    if (grading_ || !degrees_.empty()) {
      if (!grading_) fail_at(degrees_.begin()->second.second, "'grade' lines need a 'grading' line");
      std::vector<std::size_t> deg(a.dim());
      for (std::size_t i = 0; i < a.dim(); ++i) {
        auto it = degrees_.find(i);
        if (it == degrees_.end()) fail_at(grading_line_, "no degree given for basis index " + std::to_string(i));
        deg[i] = it->second.first;
      }
      for (const auto& [i, d] : degrees_)
        if (i >= a.dim()) fail_at(d.second, "basis index " + std::to_string(i) + " out of range");
      try {
        out.graded = GradedAlgebra::make(a, *grading_, deg);
      } catch (const GradedError& e) {
        fail_at(grading_line_, e.what());
      }
    }
    if (!summands_.empty()) {
      std::vector<Module> parts;
      for (const auto& s : summands_) parts.push_back(build_summand(a, s));
      out.module = parts.size() == 1 ? parts[0] : direct_sum(parts);
    }
    return out;
  }

  std::istream& in_;
  Field field_;
  std::string source_;
  std::size_t line_no_ = 0;

  Kind kind_ = Kind::None;
  std::size_t algebra_line_ = 0;
  std::size_t dim_ = 0;
  std::vector<StructureConstant> constants_;
  std::optional<SparseVec> unit_;
  std::vector<std::string> labels_;
  std::optional<Algebra> named_;
  std::optional<Rational> named_q_;
  std::string named_form_;
  QuiverPresentation quiver_;
  std::map<std::string, std::size_t> arrow_index_;
  bool has_cutoff_ = false;

  std::optional<Grading> grading_;
  std::size_t grading_line_ = 0;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> degrees_;  // basis -> (degree, line)

  std::vector<Summand> summands_;
  std::optional<std::vector<std::size_t>> phi_;
};

}  // namespace

ParsedInput parse_input(std::istream& in, Field f, const std::string& source) { return Parser(in, f, source).run(); }

ParsedInput parse_input_file(const std::string& path, Field f) {
  std::ifstream in(path);
  if (!in) throw InputError(path, 0, 0, "cannot open file");
  return parse_input(in, f, path);
}

std::string format_algebra(const Algebra& a) {
  std::ostringstream os;
  os << "algebra dim " << a.dim() << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (i < a.labels().size() && !a.labels()[i].empty()) os << "label " << i << " " << a.labels()[i] << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& e : a.product(i, j)) os << "sc " << i << " " << j << " " << e.idx << " " << e.val.str() << "\n";
  os << "unit";
  for (const auto& c : dense_from_sparse(a.unit(), a.dim())) os << " " << c.str();
  os << "\n";
  return os.str();
}

std::string format_module(const Module& m) {
  std::ostringstream os;
  os << "module dim " << m.dim() << "\n";
  for (std::size_t g : m.algebra().generators()) {
    os << "act " << g << "\n";
    for (const auto& row : m.act(g).to_dense()) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j].str();
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace fdalg::cli
