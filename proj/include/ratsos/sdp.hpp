#pragma once

// Gram-matrix semidefinite programs: assembly from polynomials and a
// multiprecision interior-point solve whose output is checked exactly.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ratsos/factor.hpp"
#include "ratsos/polynomial.hpp"
#include "ratsos/polytope.hpp"

namespace ratsos {

struct Precision {
  Rational eps = pow2(-10);
  unsigned delta = 60;   // SDP accuracy bits
  unsigned radius = 60;  // Frobenius bound on the Gram matrices
  unsigned chol = 10;    // Cholesky rounding bits
  unsigned round = 10;   // rounding bits of the projection method

  /// delta, radius and chol doubled (round too when `with_round`).
  Precision doubled(bool with_round = false) const;
};

struct GramBlock {
  SupportBasis basis;
  Polynomial multiplier;  // g_j (1 for plain SOS blocks)
};

/// Nonnegative scalar variable c_alpha multiplying 1 - X^{2 alpha}.
struct ScalarVar {
  Monomial alpha;
  Polynomial poly;
};

/// Entry A(row, col) = A(col, row) = value of a symmetric constraint matrix,
/// row <= col. Its contribution to <A, G> is value * G(row, col), doubled off
/// the diagonal.
struct EntryRef {
  std::size_t block = 0;
  std::size_t row = 0, col = 0;
  Rational value;
};

struct ScalarRef {
  std::size_t index = 0;
  Rational value;
};

struct Equality {
  std::optional<Monomial> gamma;  // empty for normalization rows
  std::vector<EntryRef> entries;
  std::vector<ScalarRef> scalars;
  Rational rhs;
};

enum class Objective { feasibility, min_trace, max_trace_first_block };

struct GramProblem {
  std::size_t nvars = 0;
  std::vector<GramBlock> blocks;
  std::vector<ScalarVar> scalars;
  std::vector<Equality> equalities;
  std::vector<EntryRef> objective;  // minimized
  std::vector<ScalarRef> scalar_objective;

  std::size_t block_size(std::size_t b) const { return blocks[b].basis.size(); }
  /// Exact left hand side of equality i at the given matrices and scalars.
  Rational lhs(std::size_t i, const std::vector<RationalMatrix>& G, const std::vector<Rational>& c) const;
};

enum class SolveStatus { success, infeasible, radius_exceeded, max_iterations, inaccurate };
std::string to_string(SolveStatus s);

struct GramSolution {
  SolveStatus status = SolveStatus::infeasible;
  std::vector<RationalMatrix> matrices;
  std::vector<Rational> scalars;
  std::vector<Rational> lambda;  // certified eigenvalue lower bound per block
  Rational residual;             // max |lhs - rhs|
  unsigned iterations = 0;

  bool ok() const { return status == SolveStatus::success; }
};

struct SolverConfig {
  unsigned max_iterations = 400;
  /// Empty for the internal engine, otherwise a command run as
  /// `<cmd> <problem.dat-s> <result>` producing SDPA style output.
  std::string external_command;
  bool verbose = false;
};

GramProblem assemble_unconstrained(const Polynomial& f, const SupportBasis& Q,
                                   Objective obj = Objective::feasibility);

GramProblem assemble_putinar(const Polynomial& f, const std::vector<Polynomial>& constraints, unsigned k,
                             const std::vector<Monomial>& scalar_alphas = {},
                             Objective obj = Objective::feasibility);

/// Blocks: 0 = numerator G over Q_D, 1 = denominator H over N^n_D.
/// Rows: trace(H F_g) - trace(G B_g) = eps trace(B_g) and trace(H) = 1.
/// `homogeneous` (forms only) keeps the degree k+D part of Q_D and the degree
/// D monomials of N^n_D.
GramProblem assemble_hilbert(const Polynomial& f, unsigned D, const Rational& eps = 0,
                             Objective obj = Objective::max_trace_first_block, bool homogeneous = false);

/// Bases of the two Hilbert blocks.
SupportBasis hilbert_numerator_basis(const Polynomial& f, unsigned D, bool homogeneous);
SupportBasis hilbert_denominator_basis(std::size_t nvars, unsigned D, bool homogeneous);

/// Solves with every block kept above 2^-delta I; the rationalized result is
/// checked exactly (residual <= 2^-delta, Frobenius norm <= radius, margin).
GramSolution solve(const GramProblem& p, unsigned delta, unsigned radius, const SolverConfig& cfg = {});

/// Largest m / 2^bits (m >= 0) with M - (m / 2^bits) I passing the exact
/// positive definiteness test; 0 when M - 2^-bits I is not positive definite.
Rational min_eig_lower_bound(const RationalMatrix& M, unsigned bits);

}  // namespace ratsos
