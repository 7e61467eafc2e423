#include "bdc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "bdc/algebra.hpp"
#include "bdc/constructions.hpp"
#include "bdc/enumeration.hpp"
#include "bdc/error.hpp"
#include "bdc/gadgets.hpp"
#include "bdc/reconstruction.hpp"

namespace bdc {

namespace {

constexpr int kExactVerifyLimit = 8;
constexpr int kRandomPoints = 3;
constexpr std::uint64_t kMinCliPrime = std::uint64_t{1} << 32;

// Paper figures asserted by --expect-paper.
constexpr std::size_t kPaperCandidates = 263;
constexpr std::uint64_t kPaperCensus = 44384;
constexpr std::uint64_t kPaperAllClasses = 251610;

struct UsageError : Error {
  using Error::Error;
};

struct VerificationFailed : Error {
  using Error::Error;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::uint64_t prime = kMersenne61;
  int jobs = 0;
  std::string output;

  PrimeField field() const {
    if (prime <= kMinCliPrime) throw UsageError("--prime must exceed 2^32");
    if (!is_prime(prime)) throw UsageError("--prime " + std::to_string(prime) + " is not prime");
    return PrimeField(prime);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes the artifact to --output, or to `out` when none was given.
// Returns the stream that should receive status lines.
std::ostream& emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.output.empty()) {
    out << text;
    return err;
  }
  std::ofstream f(cfg.output);
  if (!f) throw UsageError("cannot write '" + cfg.output + "'");
  f << text;
  return out;
}

enum class Check { kExact, kRandomized, kFailed };

// Compares det(a) with the target: exactly up to kExactVerifyLimit,
// otherwise at random points over F_p.
Check verify_matrix(const VarMatrix& a, const TargetPolynomial& t, std::uint64_t seed, const PrimeField& field,
                    int points = kRandomPoints) {
  if (a.var_count() > t.arity()) return Check::kFailed;
  if (a.size() <= kExactVerifyLimit) {
    return det_symbolic(a) == t.to_multipoly() ? Check::kExact : Check::kFailed;
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < points; ++k) {
    std::vector<FieldElement> pt(static_cast<std::size_t>(t.arity()));
    for (auto& v : pt) v = field.from_uint(rng());
    std::vector<FieldElement> used(pt.begin(), pt.begin() + a.var_count());
    if (!(det_mod_p(substitute_mod(a, used, field), field) == target_eval(t, pt, field))) return Check::kFailed;
  }
  return Check::kRandomized;
}

std::string describe(Check c, const std::string& name, int points = kRandomPoints) {
  switch (c) {
    case Check::kExact:
      return "verified: det = " + name + " (exact)";
    case Check::kRandomized:
      return "verified: det = " + name + " (randomized, " + std::to_string(points) + " points)";
    case Check::kFailed:
      break;
  }
  return "rejected: det != " + name;
}

// Reads a matrix meant for `t`, spelling grid variables with width m.
VarMatrix read_target_matrix(const std::string& path, const TargetPolynomial& t) {
  const std::string text = read_file(path);
  VarMatrix a = parse_matrix(text);
  if (a.naming().is_grid() && a.naming().grid_width != t.m()) a = parse_matrix(text, t.m());
  return a;
}

IntMatrix read_int_matrix(const std::string& path) { return parse_matrix(read_file(path)).to_int_matrix(); }

std::vector<int> parse_perm(const std::string& text) {
  std::vector<int> p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      p.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad permutation '" + text + "'");
    }
  }
  return p;
}

// ------------------------------------------------------------ construct

int cmd_construct(const RunConfig& cfg, const std::string& kind, std::int64_t param, std::ostream& out,
                  std::ostream& err) {
  const PrimeField field = cfg.field();
  if (kind == "constant") {
    const Abp abp = constant_abp(param);
    std::ostream& log = emit(cfg, serialize_abp(abp), out, err);
    const MultiPoly value = abp_path_value(abp);
    log << "constant ABP: " << abp.vertex_count() << " vertices, path value " << value.to_string({}) << '\n';
    if (!(value == MultiPoly::constant(param))) throw VerificationFailed("path value differs from " + std::to_string(param));
    return kExitOk;
  }
  if (param < 1 || param > 6) throw UsageError("construction parameter out of range");
  const int m = static_cast<int>(param);
  VarMatrix a;
  std::optional<TargetPolynomial> target;
  std::optional<Abp> abp;
  if (kind == "grenet") {
    target = TargetPolynomial::permanent(m);
    abp = grenet_abp(m);
  } else if (kind == "hc") {
    target = TargetPolynomial::hamiltonian_cycle(m + 1);
    abp = hc_abp(m);
  } else if (kind == "hc-explicit") {
    target = TargetPolynomial::hamiltonian_cycle(m);
    a = explicit_hc_matrix(m);
  } else {
    throw UsageError("unknown construction '" + kind + "' (grenet, hc, hc-explicit, constant)");
  }
  if (abp) a = abp_to_matrix(*abp, *target, cfg.seed);
  std::ostream& log = emit(cfg, serialize_matrix(a), out, err);
  log << kind << ' ' << m << ": " << a.size() << 'x' << a.size() << " matrix\n";
  bool ok = true;
  if (abp) {
    // Path value is (-1)^(#edges - 1) per path; the matrix sign was fixed above.
    const MultiPoly value = abp_path_value(*abp);
    const MultiPoly want = target->to_multipoly();
    const bool match = value == want || value == -want;
    log << (match ? "path value = " : "path value != ") << (value == want ? "" : "-") << target->name()
        << " (exact, path enumeration)\n";
    ok = ok && match;
  }
  const Check c = verify_matrix(a, *target, cfg.seed, field);
  log << describe(c, target->name()) << '\n';
  ok = ok && c != Check::kFailed;
  return ok ? kExitOk : kExitVerificationFailed;
}

// --------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg, const std::string& path, const std::string& target_name, std::ostream& out) {
  const TargetPolynomial t = TargetPolynomial::parse(target_name);
  const VarMatrix a = read_target_matrix(path, t);
  if (a.var_count() > t.arity()) {
    throw UsageError("matrix uses " + std::to_string(a.var_count()) + " variables, " + t.name() + " has " +
                     std::to_string(t.arity()));
  }
  const Check c = verify_matrix(a, t, cfg.seed, cfg.field());
  out << a.size() << 'x' << a.size() << " matrix: " << describe(c, t.name()) << '\n';
  return c == Check::kFailed ? kExitVerificationFailed : kExitOk;
}

// ------------------------------------------------------------- binarize

int cmd_binarize(const RunConfig& cfg, const std::string& path, std::ostream& out, std::ostream& err) {
  const VarMatrix c = parse_matrix(read_file(path));
  const VarMatrix b = binarize(c);
  std::ostream& log = emit(cfg, serialize_matrix(b), out, err);
  log << "binarized " << c.size() << 'x' << c.size() << " -> " << b.size() << 'x' << b.size() << '\n';
  if (b.size() <= kMaxSymbolicDetSize) {
    const MultiPoly before = det_symbolic(c);
    if (!(det_symbolic(b) == before)) throw VerificationFailed("binarization changed the determinant");
    log << "det preserved: " << before.to_string(c.naming()) << " (exact)\n";
    return kExitOk;
  }
  const PrimeField field = cfg.field();
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < kRandomPoints; ++k) {
    std::vector<FieldElement> pt(static_cast<std::size_t>(c.var_count()));
    for (auto& v : pt) v = field.from_uint(rng());
    std::vector<FieldElement> pb(pt);
    pb.resize(static_cast<std::size_t>(b.var_count()), field.zero());
    if (!(det_mod_p(substitute_mod(c, pt, field), field) == det_mod_p(substitute_mod(b, pb, field), field))) {
      throw VerificationFailed("binarization changed the determinant");
    }
  }
  log << "det preserved (randomized, " << kRandomPoints << " points)\n";
  return kExitOk;
}

// --------------------------------------------------------------- action

struct ActionArgs {
  std::string input, g, h, sigma, tau;
  bool transpose = false;
};

int cmd_action(const RunConfig& cfg, const ActionArgs& args, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(args.input);
  VarMatrix a = parse_matrix(text);
  VarMatrix result;
  const bool sandwich = !args.g.empty() || !args.h.empty();
  const bool relabel = !args.sigma.empty() || !args.tau.empty() || args.transpose;
  if (sandwich == relabel) throw UsageError("give either --g/--h or --sigma/--tau/--transpose");
  std::vector<std::string> notes;
  if (sandwich) {
    if (args.g.empty() || args.h.empty()) throw UsageError("--g and --h go together");
    const IntMatrix g = read_int_matrix(args.g), h = read_int_matrix(args.h);
    const std::int64_t dg = det_int(g), dh = det_int(h);
    notes.push_back("det(g) = " + std::to_string(dg) + ", det(h) = " + std::to_string(dh));
    if (dg != dh || (dg != 1 && dg != -1)) {
      throw VerificationFailed("(g, h) must be unimodular with det(g) = det(h)");
    }
    result = gl_sandwich(g, a, h).to_var_matrix(a.naming());
  } else {
    if (a.naming().is_grid() && a.naming().grid_width != 3) a = parse_matrix(text, 3);
    const auto sigma = args.sigma.empty() ? std::vector<int>{0, 1, 2} : parse_perm(args.sigma);
    const auto tau = args.tau.empty() ? std::vector<int>{0, 1, 2} : parse_perm(args.tau);
    result = permute_target_variables(a, sigma, tau, args.transpose);
  }
  std::ostream& log = emit(cfg, serialize_matrix(result), out, err);
  for (const auto& n : notes) log << n << '\n';
  if (result.size() <= kMaxSymbolicDetSize && !relabel) {
    const bool same = det_symbolic(result) == det_symbolic(a);
    log << (same ? "det preserved (exact)" : "det changed") << '\n';
    if (!same) return kExitVerificationFailed;
  }
  if (result.size() == 7 && result.with_naming(VarNaming{3}) == grenet7x7()) log << "product equals grenet7x7\n";
  return kExitOk;
}

// ------------------------------------------------------------ enumerate

struct EnumerateArgs {
  int n = 6;
  std::int64_t abs_det = 6;
  bool transpose = false;
  bool census = false;
  bool all_classes = false;
  bool expect_paper = false;
};

int cmd_enumerate(const RunConfig& cfg, const EnumerateArgs& args, std::ostream& out) {
  EnumerationOptions opts;
  opts.n = args.n;
  opts.abs_det = args.abs_det;
  opts.jobs = cfg.jobs;
  opts.equivalence = args.transpose ? Equivalence::kRowColumnTranspose : Equivalence::kRowColumn;
  EnumerationStats stats;
  const auto list = enumerate_candidate_supports(opts, &stats);
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) throw UsageError("cannot write '" + cfg.output + "'");
    write_candidates(f, list, opts);
  }
  out << "sorted matrices: " << stats.sorted_matrices << ", |det| = " << args.abs_det << ": " << stats.det_survivors
      << '\n';
  out << list.size() << " classes (n=" << args.n << ", " << to_string(opts.equivalence) << ")\n";
  bool ok = true;
  const bool paper_setting = args.n == 6 && args.abs_det == 6 && !args.transpose;
  if (args.expect_paper && paper_setting && list.size() != kPaperCandidates) {
    out << "expected " << kPaperCandidates << " classes\n";
    ok = false;
  }
  if (args.census) {
    const std::uint64_t c = count_census_classes(args.n);
    out << "census (degrees >= 2, distinct columns): " << c << " classes\n";
    if (args.expect_paper && args.n == 6 && c != kPaperCensus) ok = false;
  }
  if (args.all_classes) {
    const std::uint64_t c = count_bipartite_classes(args.n, opts.equivalence);
    out << "all " << args.n << 'x' << args.n << " 0/1 matrices: " << c << " classes\n";
    if (args.expect_paper && args.n == 6 && !args.transpose && c != kPaperAllClasses) ok = false;
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- prove

int cmd_prove(const RunConfig& cfg, const std::string& target_name, int n, bool expect_paper, std::ostream& out) {
  const TargetPolynomial t = TargetPolynomial::parse(target_name);
  ProofOptions opts;
  opts.n = n;
  opts.seed = cfg.seed;
  opts.field = cfg.field();
  opts.jobs = cfg.jobs;
  const ProofReport rep = prove_lower_bound(t, opts);
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) throw UsageError("cannot write '" + cfg.output + "'");
    write_report(f, rep);
  }
  std::size_t refuted = 0;
  for (const auto& r : rep.reports) refuted += r.outcome == Outcome::kRefuted;
  out << "max det of " << n - 1 << 'x' << n - 1 << " 0/1 matrices: " << rep.smaller_max_det << " < "
      << rep.target_at_ones << " = " << t.name() << "(1,...,1)\n";
  out << rep.reports.size() << " candidates, " << refuted << " refuted\n";
  if (!rep.all_refuted) {
    for (const auto& r : rep.reports) {
      if (r.outcome == Outcome::kRealized) out << "realization found:\n" << serialize_matrix(*r.realization);
    }
    out << "no bound proven\n";
    return kExitVerificationFailed;
  }
  out << "bdc(" << t.name() << ") >= " << rep.proven_bound() << '\n';
  if (expect_paper && n == 6 && rep.reports.size() != kPaperCandidates) {
    out << "expected " << kPaperCandidates << " candidates\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--prime", cfg.prime, "Prime modulus for randomized checks (> 2^32)");
  sub->add_option("--jobs", cfg.jobs, "Worker threads (default: all)")->check(CLI::PositiveNumber);
  sub->add_option("-o,--output", cfg.output, "Output file");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary determinantal complexity toolkit", "bdc"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string kind;
  std::int64_t param = 0;
  auto* construct = app.add_subcommand("construct", "Build grenet/hc/hc-explicit matrices or constant ABPs");
  construct->add_option("kind", kind, "grenet | hc | hc-explicit | constant")->required();
  construct->add_option("param", param, "m, or the constant c")->required();
  add_common(construct, cfg);

  std::string matrix_path, target_name = "per3";
  auto* verify = app.add_subcommand("verify", "Check det(matrix) against a target polynomial");
  verify->add_option("matrix", matrix_path, "Matrix file")->required();
  verify->add_option("--target", target_name, "per<m> | hc<m>");
  add_common(verify, cfg);

  auto* bin = app.add_subcommand("binarize", "Replace integer entries by constant gadgets");
  bin->add_option("matrix", matrix_path, "Integer matrix file")->required();
  add_common(bin, cfg);

  ActionArgs action_args;
  auto* action = app.add_subcommand("action", "Apply (g, h) or a variable relabeling");
  action->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  action->add_option("matrix", action_args.input, "Matrix file")->required();
  action->add_option("--g", action_args.g, "Left integer matrix file");
  action->add_option("--h", action_args.h, "Right integer matrix file");
  action->add_option("--sigma", action_args.sigma, "Row relabeling, e.g. 1,0,2");
  action->add_option("--tau", action_args.tau, "Column relabeling, e.g. 0,2,1");
  action->add_flag("--transpose", action_args.transpose, "Map x_ij to x_ji");
  add_common(action, cfg);

  EnumerateArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate candidate support classes");
  enumerate->add_option("--n", enum_args.n, "Matrix size")->check(CLI::Range(2, 6));
  enumerate->add_option("--det", enum_args.abs_det, "Required |det|")->check(CLI::PositiveNumber);
  enumerate->add_flag("--transpose", enum_args.transpose, "Also identify transposes");
  enumerate->add_flag("--census", enum_args.census, "Also count the degree/distinct-column census");
  enumerate->add_flag("--all-classes", enum_args.all_classes, "Also count all 0/1 matrix classes");
  enumerate->add_flag("--expect-paper", enum_args.expect_paper, "Fail unless the published counts come out");
  add_common(enumerate, cfg);

  int prove_n = 6;
  bool prove_expect = false;
  auto* prove = app.add_subcommand("prove", "Refute every candidate support of size n");
  prove->add_option("--target", target_name, "per<m> | hc<m>");
  prove->add_option("--n", prove_n, "Matrix size")->check(CLI::Range(2, 6));
  prove->add_flag("--expect-paper", prove_expect, "Fail unless all 263 candidates are refuted");
  add_common(prove, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*construct) return cmd_construct(cfg, kind, param, out, err);
    if (*verify) return cmd_verify(cfg, matrix_path, target_name, out);
    if (*bin) return cmd_binarize(cfg, matrix_path, out, err);
    if (*action) return cmd_action(cfg, action_args, out, err);
    if (*enumerate) return cmd_enumerate(cfg, enum_args, out);
    if (*prove) return cmd_prove(cfg, target_name, prove_n, prove_expect, out);
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bdc
