#include "invar/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "invar/errors.hpp"
#include "invar/hilbert.hpp"
#include "invar/invgen.hpp"
#include "invar/oracle.hpp"
#include "invar/relcheck.hpp"

namespace invar {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string bidegree_str(Bidegree b) { return "(" + std::to_string(b.d) + "," + std::to_string(b.e) + ")"; }

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

nlohmann::json analysis_json(const RelationAnalysis& a) {
  nlohmann::json j = {{"involves", a.involves}, {"f_eliminates", a.f_eliminates},
                      {"fstar_eliminates", a.fstar_eliminates}};
  j["relation_for"] = a.relation_for ? nlohmann::json(*a.relation_for) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json chain_json(const std::vector<ChainStep>& steps) {
  auto a = nlohmann::json::array();
  for (const auto& s : steps) a.push_back({{"relation", s.relation}, {"target", s.target}, {"ok", s.ok}});
  return a;
}

std::string u_name(int j) { return j < 0 ? "Um" + std::to_string(-j) : "U" + std::to_string(j); }

std::string chain_text(const std::vector<ChainStep>& steps) {
  std::vector<std::string> parts;
  for (const auto& s : steps) parts.push_back(s.relation + "->" + s.target + (s.ok ? "" : " (FAIL)"));
  return parts.empty() ? "-" : join(parts, ", ");
}

// Monomials of bidegree (d, e) in n + n variables.
double basis_size(std::size_t n, Bidegree b) {
  auto binom = [](double top, double k) {
    return std::exp(std::lgamma(top + 1) - std::lgamma(k + 1) - std::lgamma(top - k + 1));
  };
  const double m = static_cast<double>(n) - 1;
  return binom(static_cast<double>(b.d) + m, m) * binom(static_cast<double>(b.e) + m, m);
}

}  // namespace

bool minimality_as_expected(const Presentation& p, const MinimalityReport& m) {
  std::set<std::string> flagged;
  for (const auto& f : m.flags) flagged.insert(f.relation);
  if (p.group.kind == GroupKind::Bn && p.group.field.q() == 2) {
    const int n = static_cast<int>(p.group.n);
    return flagged == std::set<std::string>{relation_label(RelFamily::RTilde, 1), relation_label(RelFamily::RTilde, n)};
  }
  return flagged.empty();
}

void require_verifiable(const Presentation& p, double max_monomials) {
  for (const auto& r : p.relations) {
    const auto b = abstract_bidegree(r.poly, p.generators);
    if (!b.homogeneous()) continue;
    const double size = basis_size(p.group.n, b.value);
    if (size > max_monomials) {
      std::ostringstream os;
      os << "relation " << r.label << " has bidegree " << bidegree_str(b.value) << " with about " << size
         << " monomials; expansion is out of reach";
      throw ResourceLimit(os.str());
    }
  }
}

VerifyReport verify_presentation(const Presentation& p, const std::string& source, unsigned jobs) {
  VerifyReport r;
  r.group = p.group.name();
  r.source = source;
  const auto inv = build_invariants(p.group);
  r.kernel = verify_kernel(p, inv, jobs);
  r.structure = check_elimination_structure(p);
  r.minimality = check_minimality_obstruction(p);
  r.minimality_as_expected = minimality_as_expected(p, r.minimality);
  return r;
}

nlohmann::json VerifyReport::to_json() const {
  using nlohmann::json;
  json kern = json::array();
  for (const auto& e : kernel.entries) {
    json k = {{"label", e.label}, {"pass", e.pass}, {"residue_terms", e.residue.terms().size()}};
    if (!e.pass) k["residue_leading_term"] = render(Poly::from_terms(e.residue.field(), e.residue.nvars(), {e.residue.terms().front()}));
    kern.push_back(k);
  }
  json rows = json::array();
  for (const auto& row : structure.rows) {
    json a = analysis_json(row.actual);
    a["label"] = row.label;
    a["ok"] = row.ok();
    rows.push_back(a);
  }
  json flags = json::array();
  for (const auto& f : minimality.flags)
    flags.push_back({{"generator", f.generator},
                     {"relation", f.relation},
                     {"generator_bidegree", {f.generator_bidegree.d, f.generator_bidegree.e}},
                     {"relation_bidegree", {f.relation_bidegree.d, f.relation_bidegree.e}}});
  return {{"group", group},
          {"source", source},
          {"kernel", kern},
          {"structure",
           {{"rows", rows},
            {"one_relation_per_u", structure.one_relation_per_u},
            {"chain_invert_fstar", chain_json(structure.chain_invert_fstar)},
            {"chain_invert_f", chain_json(structure.chain_invert_f)},
            {"ok", structure.all_ok()}}},
          {"minimality", {{"flags", flags}, {"as_expected", minimality_as_expected}}},
          {"pass", pass()}};
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  auto ok = [](bool b) { return b ? "ok" : "FAIL"; };
  os << "verify " << group << " (" << source << ")\n";
  os << "kernel\n";
  for (const auto& e : kernel.entries) {
    os << "  " << e.label << "  " << (e.pass ? "PASS" : "FAIL");
    if (!e.pass) os << "  residue with " << e.residue.terms().size() << " terms";
    os << "\n";
  }
  os << "structure\n";
  for (const auto& row : structure.rows) {
    const auto& a = row.actual;
    os << "  " << row.label << "  for " << (a.relation_for ? u_name(*a.relation_for) : std::string("-"))
       << "  f-elim {" << join(a.f_eliminates) << "}  f*-elim {" << join(a.fstar_eliminates) << "}  "
       << ok(row.ok()) << "\n";
  }
  os << "  one relation per u: " << ok(structure.one_relation_per_u) << "\n";
  os << "  chain inverting f*: " << chain_text(structure.chain_invert_fstar) << "\n";
  os << "  chain inverting f: " << chain_text(structure.chain_invert_f) << "\n";
  os << "minimality\n";
  for (const auto& f : minimality.flags)
    os << "  " << f.generator << " " << bidegree_str(f.generator_bidegree) << " vs " << f.relation << " "
       << bidegree_str(f.relation_bidegree) << "\n";
  os << "  flags as expected: " << (minimality_as_expected ? "yes" : "no") << "\n";
  os << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

// --- command line ----------------------------------------------------------

namespace {

struct RunConfig {
  std::string group = "un";
  std::size_t n = 2;
  std::uint64_t p = 2;
  std::uint64_t e = 1;
  std::size_t cutoff = 0;
  bool has_cutoff = false;
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string output;
  std::string input;
  std::size_t trials = 200;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int gen() {
    const auto g = group_spec({GroupKind::Un, GroupKind::Bn});
    require_format({"json", "text", "cas"});
    const auto p = build_presentation(g);
    if (p.free_case) err_ << "warning: " << p.note << "\n";
    if (cfg_.format == "json") return emit(to_json(p).dump(2) + "\n", kExitPass);
    if (cfg_.format == "cas") return emit(to_cas_script(p), kExitPass);
    return emit(to_text(p), kExitPass);
  }

  int verify() {
    require_format({"json", "text"});
    const std::string source = cfg_.input.empty() ? "generated" : "input";
    const Presentation p = cfg_.input.empty() ? build_presentation(group_spec({GroupKind::Un, GroupKind::Bn}))
                                              : read_presentation(cfg_.input);
    require_verifiable(p);
    progress("verifying " + p.group.name() + " with " + std::to_string(p.relations.size()) + " relations");
    const auto r = verify_presentation(p, source, cfg_.jobs);
    return emit(cfg_.format == "json" ? r.to_json().dump(2) + "\n" : r.to_text(), r.pass() ? kExitPass : kExitFail);
  }

  int dims() {
    const auto g = group_spec({GroupKind::Un, GroupKind::Bn, GroupKind::GLn, GroupKind::SLn});
    require_format({"json", "csv", "text"});
    const auto cutoff = cfg_.has_cutoff ? cfg_.cutoff : default_oracle_cutoff(g.n);
    const auto t = invariant_dims(g, cutoff, OracleLimits::from_env(), progress_fn(), cfg_.jobs);
    return emit(cfg_.format == "json" ? t.to_json().dump(2) + "\n" : t.to_csv(), kExitPass);
  }

  int hilbert() {
    const auto g = group_spec({GroupKind::Un, GroupKind::Bn});
    require_format({"json", "csv", "text"});
    const auto cutoff = cfg_.has_cutoff ? cfg_.cutoff : default_hilbert_cutoff(g.n, g.field.q());
    if (static_cast<double>(cutoff + 1) * static_cast<double>(cutoff + 1) > 4e6)
      throw ResourceLimit("cutoff " + std::to_string(cutoff) + " is too large to expand");
    const auto h = series_for(g.kind, g.n, g.field.q());
    const auto s = expand(h, cutoff, cutoff);
    if (cfg_.format != "json") return emit(to_csv(s, cutoff), kExitPass);
    auto j = to_json(s, cutoff);
    j["group"] = to_string(g.kind);
    j["n"] = g.n;
    j["q"] = g.field.q();
    j["series"] = to_json(h);
    return emit(j.dump(2) + "\n", kExitPass);
  }

  int check_conjecture() {
    require_format({"json", "text"});
    const GroupSpec g{GroupKind::GLn, cfg_.n, field()};
    const auto cutoff = cfg_.has_cutoff ? cfg_.cutoff : default_oracle_cutoff(g.n);
    const auto rep = check_generation(g, conjecture_generators(g.field, g.n), cutoff, OracleLimits::from_env(),
                                      progress_fn(), false, cfg_.jobs);
    return emit(cfg_.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text(),
                rep.pass() ? kExitPass : kExitFail);
  }

  int fuzz_det() {
    require_format({"json", "text"});
    if (cfg_.n < 1 || cfg_.n > 5) throw UsageError("fuzz-det needs 1 <= n <= 5");
    progress("fuzzing with seed " + std::to_string(cfg_.seed));
    const auto r = fuzz_det_identity(cfg_.seed, cfg_.n, cfg_.trials, default_fuzz_rings());
    return emit(cfg_.format == "json" ? to_json(r).dump(2) + "\n" : to_text(r),
                r.total_failures() == 0 ? kExitPass : kExitFail);
  }

  int sl2_example() {
    require_format({"json", "text"});
    const auto cutoff = cfg_.has_cutoff ? cfg_.cutoff : 6;
    const auto r = sl2_counterexample_report(cutoff, OracleLimits::from_env(), progress_fn());
    return emit(cfg_.format == "json" ? r.to_json().dump(2) + "\n" : r.to_text(),
                r.as_expected() ? kExitPass : kExitFail);
  }

 private:
  static Presentation read_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
      return presentation_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(path + ": " + e.what());
    }
  }

  Field field() const {
    try {
      return Field::create(cfg_.p, cfg_.e);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  GroupSpec group_spec(std::initializer_list<GroupKind> allowed) const {
    GroupKind kind;
    try {
      kind = parse_group_kind(cfg_.group);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (std::find(allowed.begin(), allowed.end(), kind) == allowed.end())
      throw UsageError("this command does not support group " + to_string(kind) +
                       " (no closed-form presentation or series is known)");
    return {kind, cfg_.n, field()};
  }

  void require_format(std::initializer_list<const char*> allowed) const {
    for (const char* f : allowed)
      if (cfg_.format == f) return;
    throw UsageError("format '" + cfg_.format + "' is not available for this command");
  }

  int emit(const std::string& text, int code) {
    if (cfg_.output.empty()) {
      out_ << text;
      out_.flush();
      return code;
    }
    std::ofstream f(cfg_.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg_.output);
    f << text;
    return code;
  }

  void progress(const std::string& msg) { err_ << "[invar] " << msg << "\n"; }
  Progress progress_fn() {
    return [this](const std::string& m) { progress(m); };
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Invariant rings of finite linear groups on V + V* over F_q", "invar"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "invar 0.1.0");

  auto field_opts = [&](CLI::App* sc) {
    sc->add_option("--n", cfg.n, "dimension n")->check(CLI::Range(1, 64));
    sc->add_option("--p", cfg.p, "characteristic p (prime)")->check(CLI::PositiveNumber);
    sc->add_option("--e", cfg.e, "extension degree, q = p^e")->check(CLI::Range(1, 64));
  };
  auto group_opt = [&](CLI::App* sc) {
    sc->add_option("--group", cfg.group, "un, bn, gln or sln")->transform(CLI::detail::to_lower);
  };
  auto format_opt = [&](CLI::App* sc, const char* def) {
    cfg.format = def;
    sc->add_option("--format", cfg.format, "json, text, cas or csv")
        ->check(CLI::IsMember({"json", "text", "cas", "csv"}))
        ->default_str(def);
  };
  auto common = [&](CLI::App* sc) {
    sc->add_option("--output", cfg.output, "write the result to this file instead of stdout");
  };
  auto cutoff_opt = [&](CLI::App* sc) {
    sc->add_option_function<std::size_t>(
        "--cutoff",
        [&](const std::size_t& c) {
          cfg.cutoff = c;
          cfg.has_cutoff = true;
        },
        "largest total degree d + e");
  };
  auto jobs_opt = [&](CLI::App* sc) {
    sc->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
  };

  auto* gen = app.add_subcommand("gen", "print the presentation of the invariant ring");
  group_opt(gen), field_opts(gen), common(gen);
  auto* verify = app.add_subcommand("verify", "check relations, elimination structure and minimality");
  group_opt(verify), field_opts(verify), common(verify), jobs_opt(verify);
  verify->add_option("--input", cfg.input, "presentation JSON to verify instead of the generated one")
      ->check(CLI::ExistingFile);
  auto* dims = app.add_subcommand("dims", "brute-force invariant dimensions per bidegree");
  group_opt(dims), field_opts(dims), common(dims), cutoff_opt(dims), jobs_opt(dims);
  auto* hilb = app.add_subcommand("hilbert", "expand the closed-form Hilbert series");
  group_opt(hilb), field_opts(hilb), common(hilb), cutoff_opt(hilb);
  auto* conj = app.add_subcommand("check-conjecture", "generation check for GL_n with the conjectured generators");
  field_opts(conj), common(conj), cutoff_opt(conj), jobs_opt(conj);
  auto* fuzz = app.add_subcommand("fuzz-det", "random tests of the determinant identity over several rings");
  common(fuzz);
  cfg.n = 2;
  fuzz->add_option("--n", cfg.n, "largest matrix size (<= 5)");
  fuzz->add_option("--trials", cfg.trials, "instances per (ring, n, k)");
  fuzz->add_option("--seed", cfg.seed, "random seed");
  auto* sl2 = app.add_subcommand("sl2-example", "the SL_2(F_3) example on V + V*");
  common(sl2), cutoff_opt(sl2);
  for (auto* sc : {gen, verify, dims, hilb, conj, fuzz, sl2}) format_opt(sc, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  // per-command defaults that differ from the shared ones
  if (fuzz->parsed() && fuzz->count("--n") == 0) cfg.n = 5;

  Runner r(cfg, out, err);
  try {
    if (gen->parsed()) return r.gen();
    if (verify->parsed()) return r.verify();
    if (dims->parsed()) return r.dims();
    if (hilb->parsed()) return r.hilbert();
    if (conj->parsed()) return r.check_conjecture();
    if (fuzz->parsed()) return r.fuzz_det();
    if (sl2->parsed()) return r.sl2_example();
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::overflow_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace invar
