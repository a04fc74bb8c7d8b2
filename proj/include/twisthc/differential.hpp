#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twisthc/chain.hpp"
#include "twisthc/orbit.hpp"
#include "twisthc/parallel.hpp"
#include "twisthc/sparse_matrix.hpp"

namespace twisthc {

/// Orientation signs of the two cylinder families ending on an elliptic orbit.
/// Legal conventions satisfy c_minus * c_plus = -1.
class SignConvention {
 public:
  /// c_minus = +1, c_plus = -1.
  SignConvention() = default;
  /// Throws std::invalid_argument unless both are +-1 with product -1.
  SignConvention(int c_minus, int c_plus);
  /// Skips the product check; used to probe illegal conventions.
  static SignConvention unchecked(int c_minus, int c_plus);

  [[nodiscard]] int c_minus() const { return c_minus_; }
  [[nodiscard]] int c_plus() const { return c_plus_; }
  [[nodiscard]] bool is_legal() const { return c_minus_ * c_plus_ == -1; }
  [[nodiscard]] SignConvention flipped() const { return unchecked(-c_minus_, -c_plus_); }

 private:
  int c_minus_ = 1;
  int c_plus_ = -1;
};

/// Formal dimension of the cylinder moduli space between two torus or core
/// orbits: r + 2 (wind(upper) - wind(lower)). Binding orbits are rejected.
std::int64_t relative_dimension(const Orbit& lower, const Orbit& upper);

/// One of the ordered pairs that can carry a one-dimensional moduli space.
///
/// `lower_numerator` is the numerator n' of the lower orbit before
/// normalization, so h^{m-1} appears as n' = 0 (family 5) or n' = sigma(m-1)
/// (family 3).
struct ConnectingPair {
  int family = 0;
  Orbit lower;
  Orbit upper;
  std::int64_t lower_numerator = 0;
};

/// The five families:
///   1: (e_{n/m}, h_{n/m}),              0 < n < sigma m
///   2: (h_{n/(m-1)}, e_{n/m}),          0 < n < sigma (m-1)
///   3: (h^{m-1}, e_{sigma(m-1)/m})
///   4: (h_{(n-sigma)/(m-1)}, e_{n/m}),  sigma < n < sigma m
///   5: (h^{m-1}, e_{sigma/m})
/// for all upper windings m <= max_winding.
std::vector<ConnectingPair> allowed_pairs(std::int64_t sigma, std::int64_t max_winding);

/// |n' m - n (m-1)| / (kappa(n', m-1) kappa(n, m)).
Rat moduli_count_raw(std::int64_t lower_numerator, std::int64_t n, std::int64_t m);

/// Count of rigid cylinders from `lower` (winding m-1) to `upper` = e_{n/m}.
/// For lower = h^{m-1} the numerator is taken as 0 when n = sigma and as
/// sigma(m-1) when n = sigma(m-1). Throws std::invalid_argument when the pair
/// is not in families 2-5.
Rat moduli_count(const Orbit& lower, const Orbit& upper, std::int64_t sigma);

/// A single summand of the boundary before normalization and merging.
struct BoundaryTerm {
  int family = 0;                    // family of (target, source)
  std::int64_t raw_target_n = 0;     // n' before normalization
  Orbit target;                      // normalized target
  Rat coefficient;
};

std::vector<BoundaryTerm> boundary_terms(const Orbit& o, std::int64_t sigma,
                                         const SignConvention& signs);

/// Boundary of a generator; targets are normalized and coefficients merged.
ChainQ boundary(const Orbit& o, std::int64_t sigma, const SignConvention& signs);
ChainQ boundary(const ChainQ& chain, std::int64_t sigma, const SignConvention& signs);

struct BoundaryMatrix {
  std::int64_t sigma = 1;
  std::int64_t max_winding = 1;
  std::vector<Orbit> generators;        // canonical order; row i and column i
  std::map<Orbit, std::size_t> index;
  SparseMatQ matrix;                    // entry (row g', col g) = <d g, g'>

  [[nodiscard]] std::optional<std::size_t> index_of(const Orbit& o) const;
  [[nodiscard]] ChainQ column_chain(std::size_t col) const;
};

BoundaryMatrix boundary_matrix(std::int64_t sigma, std::int64_t max_winding,
                               const SignConvention& signs, bool include_binding = false,
                               Execution exec = Execution::Parallel);

/// Outcome of a structural check, with the first counterexample on failure.
struct CheckResult {
  bool ok = true;
  std::string counterexample;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

bool verify_d_squared(const BoundaryMatrix& d);
bool verify_d_squared(std::int64_t sigma, std::int64_t max_winding, const SignConvention& signs);

/// Checks every family 2-5 summand against kappa(n, m) times the moduli count,
/// and every matrix column against the signed sum of those summands.
CheckResult coefficient_consistency(const BoundaryMatrix& d, const SignConvention& signs);
CheckResult coefficient_consistency(std::int64_t sigma, std::int64_t max_winding,
                                    const SignConvention& signs);

/// Class preservation, winding drop of exactly one, and relative dimension 1
/// for every nonzero entry.
CheckResult structure_check(const BoundaryMatrix& d);

/// action(upper) >= action(lower) - tol for every nonzero entry whose upper
/// winding is at most `max_winding_checked`.
CheckResult energy_filter(const BoundaryMatrix& d, const LocalModelParams& params,
                          std::int64_t max_winding_checked, double tol = 1e-9);

}  // namespace twisthc
