// Multiprecision primal-dual interior-point engine (HKM direction with a
// Mehrotra predictor-corrector) and the exact checks applied to its output.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unistd.h>

#include "ratsos/errors.hpp"
#include "ratsos/sdp.hpp"
#include "ratsos/sdpa_format.hpp"

namespace ratsos {

namespace {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : old_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
  }
  ~PrecisionScope() { Real::default_precision(old_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned old_;
};

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

// Truncation of x to a multiple of 2^-bits.
Rational to_dyadic(const Real& x, unsigned bits) {
  mpfr_t tmp;
  mpfr_init2(tmp, mpfr_get_prec(x.backend().data()) + 8);
  mpfr_mul_2ui(tmp, x.backend().data(), bits, MPFR_RNDN);
  Integer z;
  mpfr_get_z(z.get_mpz_t(), tmp, MPFR_RNDZ);
  mpfr_clear(tmp);
  Rational q(z);
  q *= pow2(-static_cast<long>(bits));
  q.canonicalize();
  return q;
}

bool is_pd(const Mat& M) {
  if (M.rows() == 1) return M(0, 0) > 0;
  Eigen::LLT<Mat> llt(M);
  return llt.info() == Eigen::Success;
}

// Ordered term w * e_a e_b^T of a symmetric constraint matrix.
struct Term {
  std::size_t a, b;
  Real w;
};

struct Numeric {
  std::vector<std::size_t> sizes;               // all blocks, scalars appended as 1x1
  std::vector<std::vector<std::vector<Term>>> A;  // [constraint][block] -> terms
  Vec b;
  std::vector<Mat> C;
  std::size_t N = 0;
};

Numeric build(const GramProblem& p, const Rational& shift) {
  Numeric nu;
  for (std::size_t k = 0; k < p.blocks.size(); ++k) nu.sizes.push_back(p.block_size(k));
  const std::size_t sbase = nu.sizes.size();
  for (std::size_t k = 0; k < p.scalars.size(); ++k) nu.sizes.push_back(1);
  const std::size_t nb = nu.sizes.size();
  for (auto s : nu.sizes) nu.N += s;
  const std::size_t m = p.equalities.size();
  nu.A.assign(m, std::vector<std::vector<Term>>(nb));
  nu.b.resize(static_cast<long>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Equality& e = p.equalities[i];
    Rational tr = 0;
    for (const auto& en : e.entries) {
      Real w = to_real(en.value);
      nu.A[i][en.block].push_back(Term{en.row, en.col, w});
      if (en.row != en.col) nu.A[i][en.block].push_back(Term{en.col, en.row, w});
      else tr += en.value;
    }
    for (const auto& s : e.scalars) {
      nu.A[i][sbase + s.index].push_back(Term{0, 0, to_real(s.value)});
      tr += s.value;
    }
    nu.b(static_cast<long>(i)) = to_real(e.rhs - shift * tr);
  }
  for (std::size_t k = 0; k < nb; ++k) nu.C.push_back(Mat::Zero(static_cast<long>(nu.sizes[k]), static_cast<long>(nu.sizes[k])));
  for (const auto& en : p.objective) {
    Real w = to_real(en.value);
    nu.C[en.block](static_cast<long>(en.row), static_cast<long>(en.col)) += w;
    if (en.row != en.col) nu.C[en.block](static_cast<long>(en.col), static_cast<long>(en.row)) += w;
  }
  for (const auto& s : p.scalar_objective) nu.C[sbase + s.index](0, 0) += to_real(s.value);
  return nu;
}

using Blocks = std::vector<Mat>;

Real inner(const Blocks& X, const Blocks& Z) {
  Real s = 0;
  for (std::size_t k = 0; k < X.size(); ++k) s += X[k].cwiseProduct(Z[k]).sum();
  return s;
}

Vec apply_A(const Numeric& nu, const Blocks& X) {
  Vec r(static_cast<long>(nu.A.size()));
  for (std::size_t i = 0; i < nu.A.size(); ++i) {
    Real s = 0;
    for (std::size_t k = 0; k < nu.A[i].size(); ++k)
      for (const auto& t : nu.A[i][k]) s += t.w * X[k](static_cast<long>(t.a), static_cast<long>(t.b));
    r(static_cast<long>(i)) = s;
  }
  return r;
}

Blocks apply_At(const Numeric& nu, const Vec& y) {
  Blocks out;
  for (auto s : nu.sizes) out.push_back(Mat::Zero(static_cast<long>(s), static_cast<long>(s)));
  for (std::size_t i = 0; i < nu.A.size(); ++i) {
    const Real& yi = y(static_cast<long>(i));
    if (yi == 0) continue;
    for (std::size_t k = 0; k < nu.A[i].size(); ++k)
      for (const auto& t : nu.A[i][k]) out[k](static_cast<long>(t.a), static_cast<long>(t.b)) += t.w * yi;
  }
  return out;
}

Real frob(const Blocks& X) {
  Real s = 0;
  for (const auto& B : X) s += B.squaredNorm();
  return sqrt(s);
}

// Largest step in (0, 1] keeping X + a dX positive definite, damped by 0.95.
Real step_length(const Blocks& X, const Blocks& dX) {
  const Real limit = Real(1) / Real(0.95);
  Real amax = limit;
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (X[k].rows() == 1) {
      if (dX[k](0, 0) < 0) amax = std::min(amax, Real(-X[k](0, 0) / dX[k](0, 0)));
      continue;
    }
    if (is_pd(X[k] + amax * dX[k])) continue;
    Real lo = 0, hi = amax;
    for (int it = 0; it < 40; ++it) {
      Real mid = (lo + hi) / 2;
      if (is_pd(X[k] + mid * dX[k])) lo = mid;
      else hi = mid;
    }
    amax = lo;
  }
  return std::min(Real(1), Real(0.95) * amax);
}

struct Direction {
  Vec dy;
  Blocks dX, dZ;
};

enum class Outcome { converged, infeasible, max_iterations, breakdown };

struct EngineResult {
  Outcome outcome = Outcome::breakdown;
  Blocks X;
  unsigned iterations = 0;
};

EngineResult run_ipm(const Numeric& nu, unsigned delta, unsigned radius, const SolverConfig& cfg) {
  const std::size_t nb = nu.sizes.size();
  const long m = static_cast<long>(nu.A.size());
  const Real tol_p = ldexp(Real(1), -static_cast<int>(delta) - 10);
  const Real tol_rel = ldexp(Real(1), -30);
  Real R_inf = std::max(Real(radius), ldexp(Real(1), static_cast<int>(delta / 2)));

  Real rho_p = 10;
  for (std::size_t i = 0; i < nu.A.size(); ++i) {
    Real an = 0;
    for (const auto& blk : nu.A[i])
      for (const auto& t : blk) an += t.w * t.w;
    an = sqrt(an);
    rho_p = std::max(rho_p, Real(10 * (1 + abs(nu.b(static_cast<long>(i)))) / (1 + an)));
  }
  Real cnorm = frob(nu.C);
  Real rho_d = std::max(Real(10), Real(10 * cnorm));

  Blocks X, Z;
  for (auto s : nu.sizes) {
    X.push_back(rho_p * Mat::Identity(static_cast<long>(s), static_cast<long>(s)));
    Z.push_back(rho_d * Mat::Identity(static_cast<long>(s), static_cast<long>(s)));
  }
  Vec y = Vec::Zero(m);
  const Real N = Real(static_cast<double>(nu.N));
  unsigned stalls = 0;

  EngineResult res;
  for (unsigned iter = 0; iter < cfg.max_iterations; ++iter) {
    res.iterations = iter;
    Vec rp = nu.b - apply_A(nu, X);
    Blocks AtY = apply_At(nu, y);
    Blocks Rd(nb);
    for (std::size_t k = 0; k < nb; ++k) Rd[k] = nu.C[k] - AtY[k] - Z[k];
    Real mu = inner(X, Z) / N;
    Real pinf = rp.size() ? Real(rp.cwiseAbs().maxCoeff()) : Real(0);
    Real dinf = frob(Rd);
    Real pobj = inner(nu.C, X);
    Real dobj = nu.b.dot(y);
    if (cfg.verbose)
      std::cerr << "  ipm " << iter << " pinf=" << pinf.convert_to<double>() << " dinf=" << dinf.convert_to<double>()
                << " mu=" << mu.convert_to<double>() << " by=" << dobj.convert_to<double>() << "\n";
    if (pinf <= tol_p && dinf <= tol_rel * (1 + cnorm) && N * mu <= tol_rel * (1 + abs(pobj))) {
      res.outcome = Outcome::converged;
      res.X = X;
      return res;
    }
    Blocks CmRd(nb);
    for (std::size_t k = 0; k < nb; ++k) CmRd[k] = nu.C[k] - Rd[k];
    if (dobj > 2 * R_inf * frob(CmRd) + ldexp(Real(1), -static_cast<int>(delta))) {
      res.outcome = Outcome::infeasible;
      return res;
    }
    if (mu < ldexp(Real(1), -static_cast<int>(2 * delta) - 40) && pinf > tol_p) {
      res.outcome = Outcome::infeasible;
      return res;
    }

    Blocks Zinv(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<Mat> llt(Z[k]);
      if (llt.info() != Eigen::Success) {
        res.outcome = Outcome::breakdown;
        return res;
      }
      Zinv[k] = llt.solve(Mat::Identity(Z[k].rows(), Z[k].cols()));
      Zinv[k] = (Zinv[k] + Zinv[k].transpose()) / 2;
    }
    // Schur complement M_ij = <A_i, X A_j Z^-1>
    Mat M = Mat::Zero(m, m);
    for (long i = 0; i < m; ++i)
      for (long j = i; j < m; ++j) {
        Real s = 0;
        for (std::size_t k = 0; k < nb; ++k) {
          const auto& Ti = nu.A[static_cast<std::size_t>(i)][k];
          const auto& Tj = nu.A[static_cast<std::size_t>(j)][k];
          if (Ti.empty() || Tj.empty()) continue;
          for (const auto& ti : Ti)
            for (const auto& tj : Tj)
              s += ti.w * tj.w * X[k](static_cast<long>(ti.a), static_cast<long>(tj.a)) *
                   Zinv[k](static_cast<long>(tj.b), static_cast<long>(ti.b));
        }
        M(i, j) = s;
        M(j, i) = s;
      }
    Eigen::LLT<Mat> schur(M);
    if (schur.info() != Eigen::Success) {
      res.outcome = Outcome::breakdown;
      return res;
    }

    // K = (Rc - X Rd) Z^-1 where Rc Z^-1 is supplied by `rcz`
    auto direction = [&](const Blocks& RcZ) {
      Blocks K(nb);
      for (std::size_t k = 0; k < nb; ++k) K[k] = RcZ[k] - X[k] * Rd[k] * Zinv[k];
      Vec rhs = rp - apply_A(nu, K);
      Direction d;
      d.dy = schur.solve(rhs);
      Blocks Atdy = apply_At(nu, d.dy);
      d.dZ.resize(nb);
      d.dX.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        d.dZ[k] = Rd[k] - Atdy[k];
        Mat dx = K[k] + X[k] * Atdy[k] * Zinv[k];
        d.dX[k] = (dx + dx.transpose()) / 2;
      }
      return d;
    };

    Blocks RcZ(nb);
    for (std::size_t k = 0; k < nb; ++k) RcZ[k] = -X[k];
    Direction pred = direction(RcZ);
    Real ap = step_length(X, pred.dX), ad = step_length(Z, pred.dZ);
    Blocks Xa(nb), Za(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      Xa[k] = X[k] + ap * pred.dX[k];
      Za[k] = Z[k] + ad * pred.dZ[k];
    }
    Real mu_aff = inner(Xa, Za) / N;
    Real ratio = mu > 0 ? Real(mu_aff / mu) : Real(0);
    Real sigma = std::min(Real(1), Real(ratio * ratio * ratio));
    for (std::size_t k = 0; k < nb; ++k)
      RcZ[k] = sigma * mu * Zinv[k] - X[k] - pred.dX[k] * pred.dZ[k] * Zinv[k];
    Direction corr = direction(RcZ);
    ap = step_length(X, corr.dX);
    ad = step_length(Z, corr.dZ);
    for (std::size_t k = 0; k < nb; ++k) {
      X[k] += ap * corr.dX[k];
      Z[k] += ad * corr.dZ[k];
      X[k] = (X[k] + X[k].transpose()) / 2;
      Z[k] = (Z[k] + Z[k].transpose()) / 2;
    }
    y += ad * corr.dy;
    if (ap < 1e-8 && ad < 1e-8) {
      if (++stalls >= 10) {
        res.outcome = Outcome::infeasible;
        return res;
      }
    } else {
      stalls = 0;
    }
  }
  res.outcome = Outcome::max_iterations;
  res.iterations = cfg.max_iterations;
  return res;
}

// External solver: export, run, import yMat as numeric blocks.
bool run_external(const GramProblem& p, const Rational& shift, const SolverConfig& cfg, Blocks* X) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path();
  static thread_local unsigned counter = 0;
  std::string stem = "ratsos_" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
  fs::path in = dir / (stem + ".dat-s"), out = dir / (stem + ".out");
  {
    std::ofstream os(in);
    write_sdpa(os, p, shift);
  }
  std::string cmd = cfg.external_command + " '" + in.string() + "' '" + out.string() + "' > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  bool ok = false;
  if (rc == 0 && fs::exists(out)) {
    std::ifstream is(out);
    try {
      SdpaSolution sol = read_sdpa_ymat(is, p);
      X->clear();
      for (const auto& M : sol.matrices) {
        Mat B(static_cast<long>(M.rows()), static_cast<long>(M.cols()));
        for (std::size_t i = 0; i < M.rows(); ++i)
          for (std::size_t j = 0; j < M.cols(); ++j) B(static_cast<long>(i), static_cast<long>(j)) = to_real(M(i, j));
        X->push_back(std::move(B));
      }
      for (const auto& c : sol.scalars) X->push_back(Mat::Constant(1, 1, to_real(c)));
      ok = true;
    } catch (const Error&) {
      ok = false;
    }
  }
  std::error_code ec;
  fs::remove(in, ec);
  fs::remove(out, ec);
  return ok;
}

}  // namespace

GramSolution solve(const GramProblem& p, unsigned delta, unsigned radius, const SolverConfig& cfg) {
  if (delta < 1 || radius < 1) throw Error(Errc::invalid_argument, "delta and radius must be positive");
  GramSolution sol;
  const Rational margin = pow2(-static_cast<long>(delta));
  const Rational shift = margin * (1 + pow2(-8));
  PrecisionScope scope(4 * delta + 32);

  Blocks X;
  if (cfg.external_command.empty()) {
    Numeric nu = build(p, shift);
    EngineResult er = run_ipm(nu, delta, radius, cfg);
    sol.iterations = er.iterations;
    if (er.outcome == Outcome::infeasible || er.outcome == Outcome::breakdown) {
      sol.status = SolveStatus::infeasible;
      return sol;
    }
    if (er.outcome == Outcome::max_iterations) {
      sol.status = SolveStatus::max_iterations;
      return sol;
    }
    X = std::move(er.X);
  } else if (!run_external(p, shift, cfg, &X)) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }

  // rationalize: truncate at 2 delta bits, symmetrize from the upper triangle, add the shift
  const unsigned bits = 2 * delta;
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const std::size_t s = p.block_size(k);
    RationalMatrix G(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i; j < s; ++j) {
        Rational v = to_dyadic(X[k](static_cast<long>(i), static_cast<long>(j)), bits);
        if (i == j) v += shift;
        G(i, j) = v;
        G(j, i) = v;
      }
    sol.matrices.push_back(std::move(G));
  }
  for (std::size_t k = 0; k < p.scalars.size(); ++k) {
    Rational v = to_dyadic(X[p.blocks.size() + k](0, 0), bits) + shift;
    sol.scalars.push_back(v);
  }

  // exact postconditions
  Rational worst = 0;
  for (std::size_t i = 0; i < p.equalities.size(); ++i)
    worst = std::max(worst, ratsos::abs(Rational(p.lhs(i, sol.matrices, sol.scalars) - p.equalities[i].rhs)));
  sol.residual = worst;
  Rational fro2 = 0;
  for (const auto& G : sol.matrices) fro2 += G.frobenius_squared();
  for (const auto& c : sol.scalars) fro2 += c * c;
  for (const auto& G : sol.matrices) sol.lambda.push_back(min_eig_lower_bound(G, delta + 16));
  bool margin_ok = true;
  for (const auto& l : sol.lambda) margin_ok = margin_ok && l >= margin;
  for (const auto& c : sol.scalars) margin_ok = margin_ok && c >= margin;
  if (worst > margin || !margin_ok) {
    sol.status = SolveStatus::inaccurate;
  } else if (fro2 > Rational(radius) * Rational(radius)) {
    sol.status = SolveStatus::radius_exceeded;
  } else {
    sol.status = SolveStatus::success;
  }
  return sol;
}

Rational min_eig_lower_bound(const RationalMatrix& M, unsigned bits) {
  const std::size_t r = M.rows();
  if (r == 0) return Rational(0);
  auto passes = [&](const Integer& m) {
    RationalMatrix S = M;
    Rational lam(m);
    lam *= pow2(-static_cast<long>(bits));
    for (std::size_t i = 0; i < r; ++i) S(i, i) -= lam;
    return is_positive_definite(S);
  };
  if (!passes(Integer(1))) return Rational(0);

  // numeric estimate by bisection on Cholesky of M - t I
  Integer guess;
  {
    PrecisionScope scope(bits + 64);
    Mat A(static_cast<long>(r), static_cast<long>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) A(static_cast<long>(i), static_cast<long>(j)) = to_real(M(i, j));
    Real lo = 0, hi = A(0, 0);
    for (long i = 1; i < A.rows(); ++i) hi = std::min(hi, Real(A(i, i)));
    const Real width = ldexp(Real(1), -static_cast<int>(bits) - 2);
    Mat I = Mat::Identity(A.rows(), A.cols());
    while (hi - lo > width) {
      Real mid = (lo + hi) / 2;
      if (is_pd(A - mid * I)) lo = mid;
      else hi = mid;
    }
    Rational q = to_dyadic(lo, bits);
    guess = q * pow2(static_cast<long>(bits));
  }
  if (guess < 1) guess = 1;
  // exact search around the estimate
  Integer lo_m, hi_m;  // passes(lo_m), !passes(hi_m)
  Integer step = 1;
  if (passes(guess)) {
    lo_m = guess;
    hi_m = guess + step;
    while (passes(hi_m)) {
      lo_m = hi_m;
      step *= 2;
      hi_m = lo_m + step;
    }
  } else {
    hi_m = guess;
    lo_m = guess - step;
    while (lo_m > 1 && !passes(lo_m)) {
      hi_m = lo_m;
      step *= 2;
      lo_m = hi_m - step;
      if (lo_m < 1) lo_m = 1;
    }
  }
  while (hi_m - lo_m > 1) {
    Integer mid = (lo_m + hi_m) / 2;
    if (passes(mid)) lo_m = mid;
    else hi_m = mid;
  }
  Rational out(lo_m);
  out *= pow2(-static_cast<long>(bits));
  out.canonicalize();
  return out;
}

}  // namespace ratsos
