#include "ratsos/sdpa_format.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "ratsos/errors.hpp"

namespace ratsos {

namespace {

Rational trace_of(const Equality& e) {
  Rational t = 0;
  for (const auto& en : e.entries)
    if (en.row == en.col) t += en.value;
  for (const auto& s : e.scalars) t += s.value;
  return t;
}

std::string num(const Rational& q) { return to_decimal(q, 60); }

// Parses a decimal or scientific literal exactly.
Rational parse_number(const std::string& tok) {
  auto e = tok.find_first_of("eE");
  if (e == std::string::npos) return parse_rational(tok);
  Rational mant = parse_rational(tok.substr(0, e));
  long ex = std::stol(tok.substr(e + 1));
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(ex < 0 ? -ex : ex));
  return ex < 0 ? Rational(mant / Rational(p)) : Rational(mant * Rational(p));
}

std::string strip(const std::string& line) {
  std::string s;
  for (char ch : line) s.push_back((ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ? ' ' : ch);
  return s;
}

}  // namespace

void write_sdpa(std::ostream& os, const GramProblem& p, const Rational& shift) {
  os << "\"Gram problem with " << p.equalities.size() << " constraints\n";
  os << p.equalities.size() << "\n";
  const std::size_t nb = p.blocks.size() + (p.scalars.empty() ? 0 : 1);
  os << nb << "\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b) os << (b ? " " : "") << p.block_size(b);
  if (!p.scalars.empty()) os << (p.blocks.empty() ? "" : " ") << "-" << p.scalars.size();
  os << "\n";
  for (std::size_t i = 0; i < p.equalities.size(); ++i) {
    const auto& e = p.equalities[i];
    os << (i ? " " : "") << num(e.rhs - shift * trace_of(e));
  }
  os << "\n";
  const std::size_t sblock = p.blocks.size() + 1;
  for (const auto& en : p.objective)
    if (sgn(en.value) != 0) os << "0 " << en.block + 1 << " " << en.row + 1 << " " << en.col + 1 << " " << num(-en.value) << "\n";
  for (const auto& s : p.scalar_objective)
    if (sgn(s.value) != 0) os << "0 " << sblock << " " << s.index + 1 << " " << s.index + 1 << " " << num(-s.value) << "\n";
  for (std::size_t i = 0; i < p.equalities.size(); ++i) {
    for (const auto& en : p.equalities[i].entries)
      os << i + 1 << " " << en.block + 1 << " " << en.row + 1 << " " << en.col + 1 << " " << num(en.value) << "\n";
    for (const auto& s : p.equalities[i].scalars)
      os << i + 1 << " " << sblock << " " << s.index + 1 << " " << s.index + 1 << " " << num(s.value) << "\n";
  }
}

SdpaData read_sdpa(std::istream& is) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '"' || line[first] == '*') continue;
    std::istringstream ls(strip(line));
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw Error(Errc::parse_error, "truncated SDPA data");
    return tokens[pos++];
  };
  SdpaData d;
  try {
    d.m = std::stoul(next());
    std::size_t nb = std::stoul(next());
    for (std::size_t b = 0; b < nb; ++b) d.block_sizes.push_back(std::stol(next()));
    for (std::size_t i = 0; i < d.m; ++i) d.c.push_back(parse_number(next()));
    while (pos < tokens.size()) {
      SdpaData::Entry e;
      e.mat = std::stoul(next());
      e.block = std::stoul(next());
      e.i = std::stoul(next());
      e.j = std::stoul(next());
      e.value = parse_number(next());
      if (e.mat > d.m || e.block < 1 || e.block > nb) throw Error(Errc::parse_error, "SDPA entry out of range");
      d.entries.push_back(std::move(e));
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::parse_error, "malformed SDPA number");
  }
  return d;
}

SdpaSolution read_sdpa_ymat(std::istream& is, const GramProblem& p) {
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  auto at = text.find("yMat");
  if (at == std::string::npos) throw Error(Errc::parse_error, "no yMat section in solver output");
  auto open = text.find('{', at);
  if (open == std::string::npos) throw Error(Errc::parse_error, "malformed yMat section");
  int depth = 0;
  std::size_t close = open;
  for (; close < text.size(); ++close) {
    if (text[close] == '{') ++depth;
    if (text[close] == '}' && --depth == 0) break;
  }
  std::istringstream vs(strip(text.substr(open, close - open + 1)));
  std::vector<Rational> values;
  std::string tok;
  while (vs >> tok) values.push_back(parse_number(tok));
  SdpaSolution sol;
  std::size_t k = 0;
  auto take = [&]() {
    if (k >= values.size()) throw Error(Errc::parse_error, "yMat has too few entries");
    return values[k++];
  };
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const std::size_t s = p.block_size(b);
    RationalMatrix M(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) M(i, j) = take();
    sol.matrices.push_back(std::move(M));
  }
  for (std::size_t i = 0; i < p.scalars.size(); ++i) sol.scalars.push_back(take());
  return sol;
}

}  // namespace ratsos
