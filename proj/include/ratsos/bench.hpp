#pragma once

// Certifier dispatch by mode and the benchmark harness.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratsos/putinar.hpp"

namespace ratsos {

enum class Mode { intsos, roundproject, reznick, hilbert, putinar, rp_putinar };
std::string to_string(Mode m);
/// Throws Error(invalid_argument) on unknown names.
Mode parse_mode(const std::string& s);

struct CertifyRequest {
  Polynomial f;
  std::vector<Polynomial> constraints;
  Mode mode = Mode::intsos;
  CertifyOptions opts;
  std::optional<unsigned> max_degree;  // Reznick/Hilbert D or Putinar k
  bool box_only = false;
};

/// Runs the certifier of `req.mode`; every returned certificate has passed
/// exact verification.
Certificate certify(const CertifyRequest& req);

struct BenchInstance {
  std::string id;
  CertifyRequest request;
  std::string expect = "success";  // or the expected error name
};

struct BenchResult {
  std::string id;
  std::size_t n = 0;
  int d = 0;
  Mode mode = Mode::intsos;
  std::string status;  // "success" or an error name
  std::size_t bits = 0;
  double seconds = 0;
  std::string expect;
  std::string message;
  std::optional<Certificate> certificate;

  bool as_expected() const { return status == expect; }
};

std::vector<std::string> suite_names();
/// Built-in suites; random instances are drawn from `seed`.
std::vector<BenchInstance> builtin_suite(const std::string& name, unsigned seed = 2024);
/// Every *.txt problem file of a directory, certified with `mode`.
std::vector<BenchInstance> directory_suite(const std::string& dir, Mode mode, const CertifyOptions& opts);

BenchResult run_instance(const BenchInstance& inst);
std::vector<BenchResult> run_suite(const std::vector<BenchInstance>& suite,
                                   const std::function<void(const BenchResult&)>& on_result = {});

void write_csv(std::ostream& os, const std::vector<BenchResult>& results);
void write_table(std::ostream& os, const std::vector<BenchResult>& results);

}  // namespace ratsos
