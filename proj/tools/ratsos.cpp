#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ratsos/bench.hpp"
#include "ratsos/errors.hpp"
#include "ratsos/sdpa_format.hpp"
#include "ratsos/verify.hpp"

using namespace ratsos;

namespace {

// certify exit codes; check uses 0 verified, 1 falsified, 2 malformed
enum Exit : int {
  ok = 0,
  usage = 2,
  rejected = 3,  // zero, odd degree, not SOS, not a form
  eps_underflow = 4,
  precision_ceiling = 5,
  degree_cap = 6,
  unabsorbable = 7,
  soundness = 8,
  solver = 9,
};

int exit_code(Errc c) {
  switch (c) {
    case Errc::zero_polynomial:
    case Errc::odd_degree:
    case Errc::not_sos:
    case Errc::not_a_form:
    case Errc::not_psd:
    case Errc::non_positive: return rejected;
    case Errc::epsilon_underflow: return eps_underflow;
    case Errc::precision_ceiling: return precision_ceiling;
    case Errc::degree_cap_exceeded: return degree_cap;
    case Errc::unabsorbable_monomial: return unabsorbable;
    case Errc::soundness_failure: return soundness;
    case Errc::solver_failure: return solver;
    default: return usage;
  }
}

std::string hint(Errc c) {
  switch (c) {
    case Errc::epsilon_underflow:
      return "the input may lie on the boundary of the SOS cone or outside it; try a Reznick or Hilbert mode, or a "
             "smaller --eps with a larger --delta";
    case Errc::precision_ceiling: return "raise --delta/--radius/--chol or the budget; the input may be near the boundary";
    case Errc::degree_cap_exceeded: return "raise --max-degree";
    case Errc::not_sos: return "the input has no SOS decomposition";
    default: return "";
  }
}

struct ParamArgs {
  std::string eps = "2^-10";
  unsigned delta = 60, radius = 60, chol = 10, round = 10;
  std::string solver = "internal";
  unsigned rounds = 10, delta_cap = 16384, eps_floor = 128;

  void add(CLI::App* app) {
    app->add_option("--eps", eps, "initial perturbation, e.g. 1, 1/4, 2^-20")->capture_default_str();
    app->add_option("--delta", delta, "SDP accuracy bits")->capture_default_str();
    app->add_option("--radius", radius, "bound on the Gram matrix norm")->capture_default_str();
    app->add_option("--chol", chol, "Cholesky rounding bits")->capture_default_str();
    app->add_option("--round", round, "rounding bits of the projection modes")->capture_default_str();
    app->add_option("--solver", solver, "internal or external:<command>")->capture_default_str();
    app->add_option("--max-rounds", rounds, "precision doubling rounds")->capture_default_str();
    app->add_option("--delta-cap", delta_cap, "largest delta tried")->capture_default_str();
    app->add_option("--eps-floor", eps_floor, "eps floor exponent k (2^-k)")->capture_default_str();
  }

  CertifyOptions options(bool verbose) const {
    CertifyOptions o;
    o.prec.eps = parse_rational(eps);
    o.prec.delta = delta;
    o.prec.radius = radius;
    o.prec.chol = chol;
    o.prec.round = round;
    o.budget.max_rounds = rounds;
    o.budget.delta_cap = delta_cap;
    o.budget.eps_floor_bits = eps_floor;
    if (solver.rfind("external:", 0) == 0) o.solver.external_command = solver.substr(9);
    else if (solver != "internal") throw Error(Errc::invalid_argument, "--solver must be internal or external:<command>");
    if (verbose) o.progress = [](const std::string& m) { std::cerr << "  " << m << "\n"; };
    return o;
  }
};

struct InputArgs {
  std::string polynomial, problem_file;
  std::vector<std::string> constraints;
  std::size_t vars = 0;

  void add(CLI::App* app) {
    app->add_option("polynomial", polynomial, "polynomial in X1..Xn");
    app->add_option("--problem", problem_file, "problem file")->check(CLI::ExistingFile);
    app->add_option("--constraint,-g", constraints, "constraint g >= 0 (repeatable)")->allow_extra_args(false);
    app->add_option("--vars,-n", vars, "number of variables (default: inferred)");
  }

  Problem load() const {
    Problem p;
    if (!problem_file.empty()) {
      std::ifstream in(problem_file);
      p = read_problem(in);
      if (!polynomial.empty()) throw Error(Errc::invalid_argument, "give either a polynomial or --problem, not both");
    } else {
      if (polynomial.empty()) throw Error(Errc::invalid_argument, "no polynomial given");
      p.nvars = vars;
      if (p.nvars == 0) {
        p.nvars = infer_nvars(polynomial);
        for (const auto& g : constraints) p.nvars = std::max(p.nvars, infer_nvars(g));
      }
      p.f = parse_polynomial(polynomial, p.nvars);
    }
    for (const auto& g : constraints) p.constraints.push_back(parse_polynomial(g, p.nvars));
    return p;
  }
};

void print_summary(std::ostream& os, const Certificate& c, double seconds) {
  os << "kind: " << to_string(c.kind) << "\n";
  if (c.kind == CertificateKind::reznick || c.kind == CertificateKind::hilbert) os << "D: " << c.degree << "\n";
  if (c.kind == CertificateKind::putinar) os << "degree: " << c.degree << "\n";
  os << "terms: " << c.term_count() << "\n";
  os << "max bit size: " << c.max_bitsize() << "\n";
  if (c.info) os << "eps: " << to_string(c.info->eps) << ", delta: " << c.info->delta << ", chol: " << c.info->chol
                 << ", rounds: " << c.info->rounds << "\n";
  os << "seconds: " << seconds << "\n";
  os << "verified: yes\n";
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::invalid_argument, "cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rational sum-of-squares certificates"};
  app.require_subcommand(1);

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "compute and verify a certificate");
  InputArgs cin_args;
  ParamArgs params;
  std::string mode_name = "intsos", out_path;
  unsigned max_degree = 0;
  bool box_only = false, verbose = false;
  cin_args.add(certify_cmd);
  params.add(certify_cmd);
  certify_cmd->add_option("--mode", mode_name, "intsos, roundproject, reznick, hilbert, putinar, rp-putinar")
      ->capture_default_str();
  certify_cmd->add_option("--max-degree", max_degree, "largest Reznick/Hilbert D or Putinar k");
  certify_cmd->add_flag("--box-only", box_only, "Putinar: only add 1 - Xi^2 to the set");
  certify_cmd->add_option("--out,-o", out_path, "certificate file (default: stdout)");
  certify_cmd->add_flag("--verbose,-v", verbose, "progress on stderr");

  // check
  auto* check_cmd = app.add_subcommand("check", "verify a certificate file exactly");
  std::string cert_path;
  InputArgs chk_args;
  check_cmd->add_option("certificate", cert_path, "certificate file")->required();
  check_cmd->add_option("--problem", chk_args.problem_file, "problem file (default: the certificate input)");
  check_cmd->add_option("--polynomial", chk_args.polynomial, "polynomial to check against");
  check_cmd->add_option("--constraint,-g", chk_args.constraints, "constraint g >= 0 (repeatable)")->allow_extra_args(false);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  std::string suite = "unconstrained-small", dir, csv_path, save_dir, bench_mode = "intsos";
  unsigned seed = 2024;
  ParamArgs bench_params;
  bench_cmd->add_option("suite", suite, "unconstrained-small, reznick, boundary, putinar, hilbert, all")
      ->capture_default_str();
  bench_cmd->add_option("--dir", dir, "directory of *.txt problem files instead of a built-in suite");
  bench_cmd->add_option("--mode", bench_mode, "mode for --dir")->capture_default_str();
  bench_cmd->add_option("--seed", seed, "seed of the random instances")->capture_default_str();
  bench_cmd->add_option("--csv", csv_path, "write CSV here");
  bench_cmd->add_option("--save", save_dir, "write each certificate into this directory");
  bench_params.add(bench_cmd);

  // sdpa
  auto* sdpa_cmd = app.add_subcommand("sdpa", "export the Gram SDP in SDPA sparse format");
  InputArgs sdpa_args;
  std::string sdpa_mode = "intsos", sdpa_out;
  unsigned sdpa_k = 0;
  sdpa_args.add(sdpa_cmd);
  sdpa_cmd->add_option("--mode", sdpa_mode, "intsos, hilbert or putinar")->capture_default_str();
  sdpa_cmd->add_option("--k", sdpa_k, "Putinar level or Hilbert D");
  sdpa_cmd->add_option("--out,-o", sdpa_out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*certify_cmd) {
    try {
      const Problem p = cin_args.load();
      CertifyRequest req;
      req.f = p.f;
      req.constraints = p.constraints;
      req.mode = parse_mode(mode_name);
      req.opts = params.options(verbose);
      if (max_degree) req.max_degree = max_degree;
      else if (p.k) req.max_degree = p.k;
      req.box_only = box_only;
      if ((req.mode == Mode::putinar || req.mode == Mode::rp_putinar) == false && !req.constraints.empty())
        throw Error(Errc::invalid_argument, "constraints need --mode putinar or rp-putinar");
      const auto t0 = std::chrono::steady_clock::now();
      const Certificate c = certify(req);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_output(out_path, certificate_to_string(c));
      print_summary(std::cerr, c, secs);
      return ok;
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      const std::string h = hint(e.code());
      if (!h.empty()) std::cerr << "hint: " << h << "\n";
      return exit_code(e.code());
    }
  }

  if (*check_cmd) {
    try {
      std::ifstream in(cert_path);
      if (!in) throw Error(Errc::malformed_certificate, "cannot read " + cert_path);
      const Certificate c = read_certificate(in);
      Polynomial f = c.input;
      std::vector<Polynomial> g;
      if (!chk_args.problem_file.empty()) {
        std::ifstream pin(chk_args.problem_file);
        Problem p = read_problem(pin);
        f = p.f;
        g = p.constraints;
      } else if (!chk_args.polynomial.empty()) {
        f = parse_polynomial(chk_args.polynomial, c.nvars);
      }
      for (const auto& s : chk_args.constraints) g.push_back(parse_polynomial(s, c.nvars));
      std::optional<std::vector<Polynomial>> S;
      if (c.kind == CertificateKind::putinar) S = g;
      const VerifyReport r = verify(f, c, S);
      std::cout << r.summary() << "\n";
      return r.verified() ? 0 : 1;
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }

  if (*bench_cmd) {
    try {
      std::vector<BenchInstance> instances =
          dir.empty() ? builtin_suite(suite, seed) : directory_suite(dir, parse_mode(bench_mode), bench_params.options(false));
      std::cout << "suite: " << (dir.empty() ? suite : dir) << ", seed: " << seed << "\n";
      if (!save_dir.empty()) std::filesystem::create_directories(save_dir);
      const auto results = run_suite(instances, [&](const BenchResult& r) {
        std::cerr << r.id << ": " << r.status << " (" << r.seconds << " s)\n";
        if (!save_dir.empty() && r.certificate)
          write_output((std::filesystem::path(save_dir) / (r.id + ".cert")).string(), certificate_to_string(*r.certificate));
      });
      write_table(std::cout, results);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        write_csv(csv, results);
      }
      bool all_expected = true;
      for (const auto& r : results) all_expected = all_expected && r.as_expected();
      return all_expected ? 0 : 1;
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return usage;
    }
  }

  if (*sdpa_cmd) {
    try {
      const Problem p = sdpa_args.load();
      GramProblem gp;
      if (sdpa_mode == "intsos") {
        gp = assemble_unconstrained(p.f, half_lattice_points(newton_polytope(p.f)));
      } else if (sdpa_mode == "hilbert") {
        gp = assemble_hilbert(p.f, sdpa_k ? sdpa_k : 1);
      } else if (sdpa_mode == "putinar") {
        const SemialgebraicSet S(p.nvars, p.constraints);
        gp = assemble_putinar(p.f, p.constraints, sdpa_k ? sdpa_k : S.min_level(p.f));
      } else {
        throw Error(Errc::invalid_argument, "unknown sdpa mode '" + sdpa_mode + "'");
      }
      std::ostringstream os;
      write_sdpa(os, gp);
      write_output(sdpa_out, os.str());
      return ok;
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return usage;
    }
  }
  return ok;
}
