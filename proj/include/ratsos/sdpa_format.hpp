#pragma once

// Sparse SDPA text format. A Gram problem "find G >= 0 with <A_i, G> = b_i,
// minimize <C, G>" is written in SDPA dual form: c = b, F_i = A_i, F_0 = -C.
// Scalar variables form one trailing diagonal block.

#include <iosfwd>
#include <string>
#include <vector>

#include "ratsos/sdp.hpp"

namespace ratsos {

/// Writes the problem with every variable shifted by `shift` (G = G' + shift I).
void write_sdpa(std::ostream& os, const GramProblem& p, const Rational& shift = 0);

/// Raw contents of an SDPA sparse file.
struct SdpaData {
  std::size_t m = 0;
  std::vector<long> block_sizes;
  std::vector<Rational> c;
  struct Entry {
    std::size_t mat, block, i, j;
    Rational value;
  };
  std::vector<Entry> entries;
};

/// Reads a sparse SDPA file; lines starting with '"' or '*' are comments and
/// the separators {}(), are treated as whitespace.
SdpaData read_sdpa(std::istream& is);

/// Block matrices and scalar values read from an SDPA result "yMat = {...}".
struct SdpaSolution {
  std::vector<RationalMatrix> matrices;
  std::vector<Rational> scalars;
};
SdpaSolution read_sdpa_ymat(std::istream& is, const GramProblem& p);

}  // namespace ratsos
