#include "ratsos/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>

#include "ratsos/errors.hpp"
#include "ratsos/extensions.hpp"
#include "ratsos/polytope.hpp"

namespace ratsos {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::intsos: return "intsos";
    case Mode::roundproject: return "roundproject";
    case Mode::reznick: return "reznick";
    case Mode::hilbert: return "hilbert";
    case Mode::putinar: return "putinar";
    case Mode::rp_putinar: return "rp-putinar";
  }
  return "unknown";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::intsos, Mode::roundproject, Mode::reznick, Mode::hilbert, Mode::putinar, Mode::rp_putinar})
    if (to_string(m) == s) return m;
  throw Error(Errc::invalid_argument, "unknown mode '" + s + "'");
}

Certificate certify(const CertifyRequest& req) {
  switch (req.mode) {
    case Mode::intsos: return intsos(req.f, req.opts);
    case Mode::roundproject: return round_project(req.f, req.opts);
    case Mode::reznick: return reznicksos(req.f, req.opts, req.max_degree.value_or(10));
    case Mode::hilbert: return hilbertsos(req.f, req.opts, req.max_degree.value_or(3));
    case Mode::putinar:
    case Mode::rp_putinar: {
      const SemialgebraicSet S(req.f.nvars(), req.constraints);
      PutinarOptions po;
      if (req.max_degree) po.max_level = *req.max_degree;
      po.box_only = req.box_only;
      return req.mode == Mode::putinar ? putinarsos(req.f, S, req.opts, po) : round_project_putinar(req.f, S, req.opts, po);
    }
  }
  throw Error(Errc::invalid_argument, "unknown mode");
}

namespace {

Polynomial P(const std::string& s, std::size_t n) { return parse_polynomial(s, n); }

const char* kQuartic = "4*X1^4 + 4*X1^3*X2 - 7*X1^2*X2^2 - 2*X1*X2^3 + 10*X2^4";
const char* kMotzkin = "X3^6 + X1^4*X2^2 + X1^2*X2^4 - 3*X1^2*X2^2*X3^2";

Polynomial perturbed_motzkin(long e) {
  return (1 + pow2(-e)) * P("X3^6 + X1^4*X2^2 + X1^2*X2^4", 3) - P("3*X1^2*X2^2*X3^2", 3);
}

// sum of three squares of random quadratic forms plus a small multiple of
// (X1^2 + ... + Xn^2)^2
Polynomial random_pd_quartic(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<long> coef(-3, 3);
  Polynomial g(n);
  for (std::size_t i = 0; i < n; ++i) g += pow(Polynomial::variable(n, i), 2);
  Polynomial f = Rational(1, 4) * pow(g, 2);
  for (int k = 0; k < 3; ++k) {
    Polynomial q(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        q += Rational(coef(rng)) * Polynomial::variable(n, i) * Polynomial::variable(n, j);
    f += q * q;
  }
  return f;
}

BenchInstance make(std::string id, Polynomial f, Mode mode, std::string expect = "success") {
  BenchInstance b;
  b.id = std::move(id);
  b.request.f = std::move(f);
  b.request.mode = mode;
  b.expect = std::move(expect);
  return b;
}

std::vector<BenchInstance> unconstrained_small(unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<BenchInstance> s;
  auto q = make("quartic", P(kQuartic, 2), Mode::intsos);
  q.request.opts.prec.eps = 1;
  s.push_back(q);
  s.push_back(make("quartic-rp", P(kQuartic, 2), Mode::roundproject));
  s.push_back(make("two-squares", P("X1^2 + X2^2", 2), Mode::intsos));
  for (std::size_t n : {2u, 4u}) {
    const Polynomial r = random_pd_quartic(n, rng);
    s.push_back(make("r" + std::to_string(n), r, Mode::intsos));
    s.push_back(make("r" + std::to_string(n) + "-rp", r, Mode::roundproject));
  }
  return s;
}

std::vector<BenchInstance> reznick_suite() {
  std::vector<BenchInstance> s;
  auto m20 = make("M20", perturbed_motzkin(20), Mode::reznick);
  m20.request.opts.prec.eps = pow2(-20);
  s.push_back(m20);
  auto m100 = make("M100", perturbed_motzkin(100), Mode::reznick);
  m100.request.opts.prec.eps = pow2(-100);
  m100.request.opts.prec.delta = 200;
  m100.request.opts.prec.radius = 200;
  m100.request.opts.prec.chol = 60;
  m100.request.max_degree = 2;
  s.push_back(m100);
  return s;
}

std::vector<BenchInstance> boundary_suite() {
  std::vector<BenchInstance> s;
  s.push_back(make("motzkin", P(kMotzkin, 3), Mode::intsos, "EpsilonUnderflow"));
  // dehomogenized Motzkin: non-negative, not SOS
  s.push_back(make("motzkin-affine", P("X1^4*X2^2 + X1^2*X2^4 - 3*X1^2*X2^2 + 1", 2), Mode::intsos, "EpsilonUnderflow"));
  s.push_back(make("x1x2", P("X1*X2", 2), Mode::intsos, "NotSos"));
  return s;
}

std::vector<BenchInstance> putinar_suite() {
  std::vector<BenchInstance> s;
  const std::vector<Polynomial> box = {P("1 - X1^2", 2), P("1 - X2^2", 2)};
  auto ex = make("box-quadratic", P("-X1^2 - 2*X1*X2 - 2*X2^2 + 6", 2), Mode::putinar);
  ex.request.constraints = box;
  ex.request.opts.prec.eps = 1;
  s.push_back(ex);
  auto rp = make("box-quadratic-rp", P("-X1^2 - 2*X1*X2 - 2*X2^2 + 6", 2), Mode::rp_putinar);
  rp.request.constraints = box;
  s.push_back(rp);
  auto iv = make("interval", P("2 - X1^2", 1), Mode::putinar);
  iv.request.constraints = {P("1 - X1^2", 1)};
  s.push_back(iv);
  auto quartic = make("box-quartic", P("X1^4 - X2^2 + X1*X2 + 2", 2), Mode::putinar);
  quartic.request.constraints = box;
  quartic.request.box_only = true;
  s.push_back(quartic);
  return s;
}

std::vector<BenchInstance> hilbert_suite() {
  std::vector<BenchInstance> s;
  s.push_back(make("quartic-hilbert", P(kQuartic, 2), Mode::hilbert));
  auto m10 = make("M10-hilbert", perturbed_motzkin(10), Mode::hilbert);
  m10.request.max_degree = 2;
  s.push_back(m10);
  s.push_back(make("one-hilbert", P("1", 2), Mode::hilbert));
  return s;
}

}  // namespace

std::vector<std::string> suite_names() { return {"unconstrained-small", "reznick", "boundary", "putinar", "hilbert", "all"}; }

std::vector<BenchInstance> builtin_suite(const std::string& name, unsigned seed) {
  if (name == "unconstrained-small") return unconstrained_small(seed);
  if (name == "reznick") return reznick_suite();
  if (name == "boundary") return boundary_suite();
  if (name == "putinar") return putinar_suite();
  if (name == "hilbert") return hilbert_suite();
  if (name == "all") {
    std::vector<BenchInstance> all;
    for (const auto& n : suite_names())
      if (n != "all") {
        auto part = builtin_suite(n, seed);
        all.insert(all.end(), part.begin(), part.end());
      }
    return all;
  }
  throw Error(Errc::invalid_argument, "unknown suite '" + name + "'");
}

std::vector<BenchInstance> directory_suite(const std::string& dir, Mode mode, const CertifyOptions& opts) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<BenchInstance> s;
  for (const auto& p : files) {
    std::ifstream in(p);
    Problem prob = read_problem(in);
    BenchInstance b = make(p.stem().string(), prob.f, mode);
    b.request.constraints = prob.constraints;
    b.request.opts = opts;
    if (prob.k) b.request.max_degree = prob.k;
    s.push_back(std::move(b));
  }
  return s;
}

BenchResult run_instance(const BenchInstance& inst) {
  BenchResult r;
  r.id = inst.id;
  r.n = inst.request.f.nvars();
  r.d = inst.request.f.degree();
  r.mode = inst.request.mode;
  r.expect = inst.expect;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.certificate = certify(inst.request);
    r.status = "success";
    r.bits = r.certificate->max_bitsize();
  } catch (const Error& e) {
    r.status = std::string(errc_name(e.code()));
    r.message = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<BenchResult> run_suite(const std::vector<BenchInstance>& suite,
                                   const std::function<void(const BenchResult&)>& on_result) {
  // sequential: the multiprecision default precision is process wide
  std::vector<BenchResult> out;
  for (const auto& inst : suite) {
    out.push_back(run_instance(inst));
    if (on_result) on_result(out.back());
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<BenchResult>& results) {
  os << "id,n,d,mode,status,bits,seconds\n";
  for (const auto& r : results)
    os << r.id << "," << r.n << "," << r.d << "," << to_string(r.mode) << "," << r.status << "," << r.bits << ","
       << std::fixed << std::setprecision(3) << r.seconds << std::defaultfloat << "\n";
}

void write_table(std::ostream& os, const std::vector<BenchResult>& results) {
  os << std::left << std::setw(18) << "id" << std::setw(4) << "n" << std::setw(4) << "d" << std::setw(14) << "mode"
     << std::setw(18) << "status" << std::setw(8) << "bits" << "seconds\n";
  for (const auto& r : results) {
    os << std::left << std::setw(18) << r.id << std::setw(4) << r.n << std::setw(4) << r.d << std::setw(14)
       << to_string(r.mode) << std::setw(18) << r.status << std::setw(8) << r.bits << std::fixed
       << std::setprecision(3) << r.seconds << std::defaultfloat;
    if (!r.as_expected()) os << "  (expected " << r.expect << ")";
    os << "\n";
  }
}

}  // namespace ratsos
