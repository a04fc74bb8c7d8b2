#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twisthc/differential.hpp"
#include "twisthc/homology.hpp"
#include "twisthc/local_model.hpp"

namespace twisthc {

enum class OutputFormat { Json, Csv, Text };

OutputFormat parse_format(const std::string& name);

struct RunConfig {
  std::int64_t sigma = 1;
  std::int64_t max_winding = 1;
  SignConvention signs{};
  bool include_binding = false;
  OutputFormat format = OutputFormat::Text;
  LocalModelParams local = LocalModelParams::for_sigma(1);

  /// Throws std::invalid_argument when an invariant fails.
  void validate() const;
};

/// Decimal with 12 significant digits.
std::string format_real(double x);
/// x rounded to 12 significant digits, for JSON emission.
double round_real(double x);

std::string render_generators(const RunConfig& cfg);

/// Throws std::invalid_argument when max_winding < 3.
std::string render_homology(const RunConfig& cfg, bool* passed = nullptr);

struct NamedCheck {
  std::string name;
  CheckResult result;
};

struct VerifyOutcome {
  std::vector<NamedCheck> checks;
  [[nodiscard]] bool ok() const;
};

/// Runs the full invariant suite under both legal sign conventions. With
/// `inject_fault` the first nonzero boundary coefficient is doubled before the
/// matrix checks run.
VerifyOutcome run_verify_suite(const RunConfig& cfg, bool inject_fault = false);
std::string render_verify(const RunConfig& cfg, const VerifyOutcome& outcome);

struct FlowRequest {
  C2Point z{std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0)};
  double t = 1.0;
  int steps = 1;
};
std::string render_flow(const RunConfig& cfg, const FlowRequest& req);

std::string render_return_map(const RunConfig& cfg, std::int64_t m_max, bool integrate);

std::string render_laurent(const RunConfig& cfg, const LaurentExponents& exps);

struct ActionRequest {
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::size_t grid = 10000;
  bool emit_curve = false;
};
std::string render_action(const RunConfig& cfg, const ActionRequest& req);

}  // namespace twisthc
