#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "cli_input.hpp"
#include "cli_report.hpp"
#include "scenarios.hpp"

using namespace fdalg;
using namespace fdalg::cli;

namespace {

struct Options {
  std::string field = "q";
  std::uint64_t seed = 0xC0FFEE;
  std::size_t trials = 64;
  std::size_t cutoff = 6;
  std::string phi;
  std::string out;
  std::string format = "text";
};

struct Loaded {
  ParsedInput input;
  Module module;
  std::vector<std::size_t> phi;
};

Loaded load(const std::string& path, const Options& o, bool need_phi) {
  Loaded l;
  l.input = parse_input_file(path, parse_field(o.field));
  if (!l.input.algebra) throw InputError(path, 1, 1, "no algebra given");
  l.module = l.input.module ? *l.input.module : regular_module(*l.input.algebra);
  if (!o.phi.empty()) l.phi = parse_phi(o.phi);
  else if (l.input.phi) l.phi = *l.input.phi;
  else if (need_phi) throw InputError(path, 1, 1, "no phi set: add a 'phi' line or pass --phi");
  return l;
}

json block_table(const GreenSpace& s) {
  json t = table({"block", "degree", "dim"});
  for (const auto& [ij, off] : s.block_offset)
    add_row(t, {"(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")", ij.second - ij.first,
                s.block_dim(ij.first, ij.second)});
  return t;
}

json cert_summary(const Certificate& c) {
  json j{{"status", c.str()}, {"dim_a", c.a.dim()}, {"dim_b", c.b.dim()}, {"dim_m", c.m.dim()}, {"dim_n", c.n.dim()}};
  if (c.mn) j["dim_p"] = c.mn->complement.dim();
  if (c.nm) j["dim_q"] = c.nm->complement.dim();
  if (c.valid()) j["recheck"] = recheck(c);
  return j;
}

Verdict verdict_of(const Certificate& c) {
  if (c.valid()) return recheck(c) ? Verdict::Pass : Verdict::Fail;
  return c.status == Certificate::Status::Inconclusive ? Verdict::Inconclusive : Verdict::Fail;
}

Bimodule pick_bimodule(const Algebra& a, const std::string& kind) {
  return kind == "syzygy" ? bimodule_syzygy_generator(a) : Bimodule::regular(a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finite-dimensional algebras, Green algebras and stable equivalences"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "q or fp:<p>")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized searches")->capture_default_str();
  app.add_option("--trials", o.trials, "trial budget for randomized searches")->capture_default_str();
  app.add_option("--cutoff", o.cutoff, "resolution depth")->capture_default_str();
  app.add_option("--phi", o.phi, "phi set, e.g. 0,1");
  app.add_option("--out", o.out, "write the report to this path");
  app.add_option("--format", o.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  Report report;
  std::function<void()> action;
  auto flag_set = [&](const char* name) { return app.get_option(name)->count() > 0; };

  auto* sc = app.add_subcommand("scenario", "run a registered scenario");
  std::string sc_name;
  std::vector<std::string> sc_params;
  sc->add_option("name", sc_name, "scenario name")->required();
  sc->add_option("params", sc_params, "key=value parameters");
  sc->callback([&] {
    action = [&] {
      Params p;
      for (const auto& kv : sc_params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ParamError("expected key=value, got '" + kv + "'");
        p.set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (flag_set("--field") && parse_field(o.field).p != 0) throw ParamError("scenarios run over Q");
      if (flag_set("--seed")) p.set("seed", std::to_string(o.seed));
      if (flag_set("--trials")) p.set("trials", std::to_string(o.trials));
      if (flag_set("--cutoff")) p.set("cutoff", std::to_string(o.cutoff));
      if (flag_set("--phi")) p.set("phi", o.phi);
      report = run_scenario(sc_name, p);
    };
  });

  auto* list = app.add_subcommand("scenarios", "list registered scenarios");
  list->callback([&] {
    action = [&] {
      report.command = "scenarios";
      json t = table({"name", "summary"});
      for (const auto& s : scenarios()) add_row(t, {s.name, s.summary});
      report.results["scenarios"] = t;
    };
  });

  std::string file;
  auto* parse = app.add_subcommand("parse", "parse an input file and describe it");
  parse->add_option("file", file)->required()->check(CLI::ExistingFile);
  parse->callback([&] {
    action = [&] {
      ParsedInput in = parse_input_file(file, parse_field(o.field));
      report.command = "parse";
      report.params["file"] = file;
      if (in.algebra) {
        const Algebra& a = *in.algebra;
        json labels = a.labels();
        report.results["algebra"] = json{{"dim", a.dim()}, {"field", a.field().name()}, {"labels", labels}};
        if (a.field().is_rational()) {
          try {
            report.results["algebra"]["radical_dim"] = a.structure().radical.dim();
            report.results["algebra"]["simples"] = a.structure().num_classes();
          } catch (const AlgebraError& e) {
            report.results["algebra"]["structure"] = e.what();
          }
        }
      }
      if (in.graded)
        report.results["grading"] = json{{"grading", in.graded->grading.str()}, {"degrees", in.graded->degree}};
      if (in.module) report.results["module"] = json{{"dim", in.module->dim()}};
      if (in.phi) report.results["phi"] = phi_text(*in.phi);
    };
  });

  auto* mod = app.add_subcommand("module", "print a named module in the input grammar");
  mod->require_subcommand(1);
  std::size_t mod_n = 0, mod_r = 0;
  std::string mod_q;
  int mod_j = 0;
  auto* nm = mod->add_subcommand("nakayama-module", "X_r over nakayama(n)");
  nm->add_option("n", mod_n)->required();
  nm->add_option("r", mod_r)->required();
  nm->callback([&] {
    action = [&] {
      truncated_module(nakayama(mod_n), mod_r);
      std::cout << "algebra nakayama " << mod_n << "\nmodule truncated " << mod_r << "\n";
    };
  });
  auto* li = mod->add_subcommand("liu-schulz-ideal", "I_j over liu_schulz(q), written out by action matrices");
  li->add_option("q", mod_q)->required();
  li->add_option("j", mod_j)->required();
  li->callback([&] {
    action = [&] {
      Rational q = Rational::parse(mod_q);
      Algebra a = liu_schulz(q);
      Module m = liu_schulz_ideal(a, q, mod_j);
      std::cout << "algebra liu-schulz " << q.str() << "\n" << format_module(m);
    };
  });

  auto* green = app.add_subcommand("green", "Beilinson-Green algebras of the module in a file");
  green->require_subcommand(1);
  auto* gb = green->add_subcommand("build", "build G^phi(X) and report its structure");
  gb->add_option("file", file)->required()->check(CLI::ExistingFile);
  gb->callback([&] {
    action = [&] {
      Loaded l = load(file, o, true);
      GreenAlgebra g = green_algebra(l.module, l.phi);
      report.command = "green build";
      report.params = json{{"file", file}, {"phi", phi_text(l.phi)}};
      report.results["dim"] = g.algebra.dim();
      report.results["blocks"] = block_table(g.space);
      report.results["radical_shape"] = radical_shape_check(g);
      report.results["simples"] = g.algebra.structure().num_classes();
    };
  });
  auto* gp = green->add_subcommand("probe-assoc", "test associativity of the truncated product for any phi");
  gp->add_option("file", file)->required()->check(CLI::ExistingFile);
  gp->callback([&] {
    action = [&] {
      Loaded l = load(file, o, true);
      auto adm = is_admissible(l.phi);
      auto probe = associativity_probe(l.module, l.phi);
      report.command = "green probe-assoc";
      report.params = json{{"file", file}, {"phi", phi_text(l.phi)}};
      report.results = json{{"admissible", adm.admissible}, {"associative", probe.associative}, {"dim", probe.dim}};
      if (!adm.admissible) report.results["admissibility_reason"] = adm.reason;
      if (!probe.associative) report.results["witness"] = probe.description;
      if (adm.admissible && !probe.associative) report.verdict = Verdict::Fail;
    };
  });
  auto* gd = green->add_subcommand("dims", "dimension table per (i,j) block");
  gd->add_option("file", file)->required()->check(CLI::ExistingFile);
  gd->callback([&] {
    action = [&] {
      Loaded l = load(file, o, true);
      admissible_set(l.phi);
      GreenSpace s = green_space(l.module, l.module, l.phi, resolve(l.module, l.phi.back() + 1));
      report.command = "green dims";
      report.params = json{{"file", file}, {"phi", phi_text(l.phi)}};
      report.results["blocks"] = block_table(s);
      report.results["dim"] = s.dim();
    };
  });

  auto* stable = app.add_subcommand("stable", "stable equivalences of Morita type");
  stable->require_subcommand(1);
  std::string bimodule = "syzygy";
  std::size_t depth = 8;
  auto* check = stable->add_subcommand("check", "certificate for (A, A, M, M) with M regular or the bimodule syzygy");
  check->add_option("file", file)->required()->check(CLI::ExistingFile);
  check->add_option("--bimodule", bimodule)->check(CLI::IsMember({"regular", "syzygy"}))->capture_default_str();
  check->callback([&] {
    action = [&] {
      Loaded l = load(file, o, false);
      const Algebra& a = *l.input.algebra;
      Bimodule m = pick_bimodule(a, bimodule);
      Certificate c = check_certificate(a, a, m, m, o.seed, o.trials);
      report.command = "stable check";
      report.params = json{{"file", file}, {"bimodule", bimodule}, {"seed", o.seed}, {"trials", o.trials}};
      report.results["certificate"] = cert_summary(c);
      report.verdict = verdict_of(c);
    };
  });
  auto* th = stable->add_subcommand("theorem1", "transport a certificate (A, A, Omega, Omega) to Green algebras of X");
  th->add_option("file", file)->required()->check(CLI::ExistingFile);
  th->add_option("--bimodule", bimodule)->check(CLI::IsMember({"regular", "syzygy"}))->capture_default_str();
  th->callback([&] {
    action = [&] {
      Loaded l = load(file, o, true);
      const Algebra& a = *l.input.algebra;
      Bimodule m = pick_bimodule(a, bimodule);
      report.command = "stable theorem1";
      report.params = json{{"file", file}, {"bimodule", bimodule}, {"phi", phi_text(l.phi)}, {"seed", o.seed},
                           {"trials", o.trials}};
      Certificate c = check_certificate(a, a, m, m, o.seed, o.trials);
      report.results["input"] = cert_summary(c);
      report.verdict = verdict_of(c);
      if (!c.valid()) return;
      Theorem1Data d = theorem1_bimodules(c, l.module, l.phi);
      Certificate t = verify_theorem1(d, o.seed, o.trials);
      report.results["lambda_dim"] = d.lambda.algebra.dim();
      report.results["gamma_dim"] = d.gamma.algebra.dim();
      report.results["u_dim"] = d.u.dim();
      report.results["v_dim"] = d.v.dim();
      report.results["certificate"] = cert_summary(t);
      report.verdict = verdict_of(t);
    };
  });
  auto* orb = stable->add_subcommand("orbit", "syzygy orbit fingerprint of the module");
  orb->add_option("file", file)->required()->check(CLI::ExistingFile);
  orb->add_option("--depth", depth, "number of syzygies")->capture_default_str();
  orb->callback([&] {
    action = [&] {
      Loaded l = load(file, o, false);
      auto f = orbit_fingerprint(l.module, depth, o.seed, o.trials);
      report.command = "stable orbit";
      report.params = json{{"file", file}, {"depth", depth}, {"seed", o.seed}, {"trials", o.trials}};
      json inv = table({"i", "dim", "dim End", "dim Hom(S,-)", "dim Hom(-,S)"});
      for (std::size_t i = 0; i < f.invariants.size(); ++i) {
        json row = json::array({i});
        for (auto x : f.invariants[i]) row.push_back(x);
        add_row(inv, row);
      }
      json pairs = table({"i", "l", "verdict"});
      for (std::size_t i = 0; i < f.verdicts.size(); ++i)
        for (std::size_t k = 0; k < f.verdicts[i].size(); ++k) add_row(pairs, {i, i + k + 1, f.verdicts[i][k].str()});
      report.results = json{{"invariants", inv},
                            {"pairs", pairs},
                            {"certified_isos", f.certified_isos()},
                            {"undecided", f.undecided()}};
    };
  });

  auto* graded = app.add_subcommand("graded", "graded algebras and bar constructions");
  graded->require_subcommand(1);
  std::size_t shift = 1;
  auto* bar = graded->add_subcommand("bar", "bar algebra of a graded algebra");
  bar->add_option("file", file)->required()->check(CLI::ExistingFile);
  bar->callback([&] {
    action = [&] {
      Loaded l = load(file, o, false);
      if (!l.input.graded) throw InputError(file, 1, 1, "no grading given");
      BarAlgebra b = bar_algebra(*l.input.graded);
      report.command = "graded bar";
      report.params = json{{"file", file}};
      report.results["grading"] = l.input.graded->grading.str();
      report.results["dim"] = b.algebra.dim();
      json t = table({"block", "degree", "dim"});
      const Grading& g = l.input.graded->grading;
      for (const auto& [rc, off] : b.block_offset) {
        std::size_t d = *g.block_degree(rc.first, rc.second);
        add_row(t, {"(" + std::to_string(rc.first) + "," + std::to_string(rc.second) + ")", d,
                    l.input.graded->dim_in(d)});
      }
      report.results["blocks"] = t;
    };
  });
  auto* gc = graded->add_subcommand("check", "graded and bar certificates for (A, A, M, M)");
  gc->add_option("file", file)->required()->check(CLI::ExistingFile);
  gc->add_option("--bimodule", bimodule)->check(CLI::IsMember({"regular", "syzygy"}))->capture_default_str();
  gc->add_option("--shift", shift, "degree shift of the bimodule syzygy")->capture_default_str();
  gc->callback([&] {
    action = [&] {
      Loaded l = load(file, o, false);
      if (!l.input.graded) throw InputError(file, 1, 1, "no grading given");
      const GradedAlgebra& a = *l.input.graded;
      GradedBimodule m =
          bimodule == "syzygy" ? graded_bimodule_syzygy(a, shift) : GradedBimodule::regular(a);
      BarReport b = bar_certificate(a, a, m, m, o.seed, o.trials);
      report.command = "graded check";
      report.params = json{{"file", file}, {"bimodule", bimodule}, {"seed", o.seed}, {"trials", o.trials}};
      if (bimodule == "syzygy") report.params["shift"] = shift;
      report.results["ungraded"] = b.ungraded.str();
      report.results["graded"] = b.graded_valid ? "valid" : b.graded_failure;
      report.results["bar"] = cert_summary(b.bar);
      if (b.p_match) report.results["p_match"] = b.p_match->str();
      if (b.q_match) report.results["q_match"] = b.q_match->str();
      report.verdict = verdict_of(b.bar);
      if (!b.graded_valid) report.note(b.ungraded.valid() ? Verdict::Fail : verdict_of(b.ungraded));
      if (b.p_match && !b.p_match->isomorphic()) report.note(Verdict::Fail);
      if (b.q_match && !b.q_match->isomorphic()) report.note(Verdict::Fail);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  try {
    auto t0 = std::chrono::steady_clock::now();
    action();
    if (report.command.empty()) return 0;
    if (report.seconds == 0)
      report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_report(report, o.format, o.out);
    return exit_code(report.verdict);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
