#include "ratsos/certificate.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "ratsos/errors.hpp"

namespace ratsos {

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::unconstrained: return "unconstrained";
    case CertificateKind::reznick: return "reznick";
    case CertificateKind::hilbert: return "hilbert";
    case CertificateKind::putinar: return "putinar";
  }
  return "unknown";
}

CertificateKind parse_kind(const std::string& s) {
  if (s == "unconstrained") return CertificateKind::unconstrained;
  if (s == "reznick") return CertificateKind::reznick;
  if (s == "hilbert") return CertificateKind::hilbert;
  if (s == "putinar") return CertificateKind::putinar;
  throw Error(Errc::malformed_certificate, "unknown certificate kind '" + s + "'");
}

std::size_t Certificate::term_count() const {
  std::size_t n = scalars.size() + (denominator ? denominator->size() : 0);
  for (const auto& b : blocks) n += b.terms.size();
  return n;
}

std::size_t Certificate::max_bitsize() const {
  std::size_t best = 1;
  auto terms = [&](const SosTerms& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      best = std::max(best, bit_size(t.weights[i]));
      best = std::max(best, coeff_bitsize(t.polys[i]).value);
    }
  };
  for (const auto& b : blocks) terms(b.terms);
  for (const auto& s : scalars) best = std::max(best, bit_size(s.weight));
  if (denominator) terms(*denominator);
  return best;
}

namespace {

void write_terms(std::ostream& os, const SosTerms& t) {
  for (std::size_t i = 0; i < t.size(); ++i) os << "term: " << to_string(t.weights[i]) << " ; " << render(t.polys[i]) << "\n";
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(Errc::malformed_certificate, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_certificate(std::ostream& os, const Certificate& c) {
  os << "kind: " << to_string(c.kind) << "\n";
  os << "variables: " << c.nvars << "\n";
  os << "input: " << render(c.input) << "\n";
  os << "degree: " << c.degree << "\n";
  if (c.info) {
    os << "# eps: " << to_string(c.info->eps) << "\n";
    os << "# delta: " << c.info->delta << "\n";
    os << "# radius: " << c.info->radius << "\n";
    os << "# chol: " << c.info->chol << "\n";
    os << "# round: " << c.info->round << "\n";
    os << "# rounds: " << c.info->rounds << "\n";
  }
  for (const auto& b : c.blocks) {
    os << "block: " << render(b.multiplier) << "\n";
    write_terms(os, b.terms);
  }
  for (const auto& s : c.scalars) os << "scalar: " << to_string(s.weight) << " ; " << render(s.poly) << "\n";
  if (c.denominator) {
    os << "denominator:\n";
    write_terms(os, *c.denominator);
  }
}

std::string certificate_to_string(const Certificate& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

Certificate read_certificate(std::istream& is) {
  Certificate c;
  bool have_kind = false, have_vars = false, have_input = false;
  enum class Section { header, block, denominator } section = Section::header;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) malformed(lineno, "expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    try {
      if (key == "kind") {
        c.kind = parse_kind(value);
        have_kind = true;
      } else if (key == "variables") {
        std::size_t used = 0;
        unsigned long n = std::stoul(value, &used);
        if (used != value.size() || n == 0) malformed(lineno, "bad variable count");
        c.nvars = n;
        have_vars = true;
      } else if (key == "input") {
        if (!have_vars) malformed(lineno, "'variables' must precede 'input'");
        c.input = parse_polynomial(value, c.nvars);
        have_input = true;
      } else if (key == "degree") {
        std::size_t used = 0;
        unsigned long d = std::stoul(value, &used);
        if (used != value.size()) malformed(lineno, "bad degree");
        c.degree = static_cast<unsigned>(d);
      } else if (key == "block") {
        if (!have_vars) malformed(lineno, "'variables' must precede blocks");
        c.blocks.push_back(SosBlock{parse_polynomial(value, c.nvars), SosTerms{}});
        section = Section::block;
      } else if (key == "denominator") {
        if (c.denominator) malformed(lineno, "duplicate denominator");
        c.denominator = SosTerms{};
        section = Section::denominator;
      } else if (key == "term" || key == "scalar") {
        auto semi = value.find(';');
        if (semi == std::string::npos) malformed(lineno, "expected '<weight> ; <polynomial>'");
        Rational w = parse_rational(trim(value.substr(0, semi)));
        Polynomial p = parse_polynomial(trim(value.substr(semi + 1)), c.nvars);
        if (key == "scalar") {
          c.scalars.push_back(ScalarTerm{w, p});
        } else if (section == Section::block) {
          c.blocks.back().terms.append(w, p);
        } else if (section == Section::denominator) {
          c.denominator->append(w, p);
        } else {
          malformed(lineno, "term outside of a block");
        }
      } else {
        malformed(lineno, "unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      malformed(lineno, e.what());
    } catch (const std::logic_error&) {
      malformed(lineno, "bad number");
    }
  }
  if (!have_kind || !have_vars || !have_input) throw Error(Errc::malformed_certificate, "missing kind, variables or input");
  if (c.blocks.empty()) throw Error(Errc::malformed_certificate, "no blocks (truncated file?)");
  return c;
}

Certificate certificate_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_certificate(is);
}

Problem read_problem(std::istream& is) {
  Problem p;
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::string> pending_f, pending_g;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(Errc::parse_error, "problem line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
    try {
      if (key == "variables") p.nvars = std::stoul(value);
      else if (key == "polynomial") pending_f.push_back(value);
      else if (key == "constraint") pending_g.push_back(value);
      else if (key == "k") p.k = static_cast<unsigned>(std::stoul(value));
      else throw Error(Errc::parse_error, "problem line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw Error(Errc::parse_error, "problem line " + std::to_string(lineno) + ": bad number");
    }
  }
  if (pending_f.size() != 1) throw Error(Errc::parse_error, "problem needs exactly one 'polynomial' line");
  if (p.nvars == 0) {
    p.nvars = infer_nvars(pending_f[0]);
    for (const auto& g : pending_g) p.nvars = std::max(p.nvars, infer_nvars(g));
  }
  p.f = parse_polynomial(pending_f[0], p.nvars);
  for (const auto& g : pending_g) p.constraints.push_back(parse_polynomial(g, p.nvars));
  return p;
}

void write_problem(std::ostream& os, const Problem& p) {
  os << "variables: " << p.nvars << "\n";
  os << "polynomial: " << render(p.f) << "\n";
  for (const auto& g : p.constraints) os << "constraint: " << render(g) << "\n";
  if (p.k) os << "k: " << *p.k << "\n";
}

}  // namespace ratsos
