#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twisthc/chain.hpp"
#include "twisthc/differential.hpp"
#include "twisthc/parallel.hpp"

namespace twisthc {

/// The closed-form elliptic cycle E_{i,m}. Requires 0 <= i < sigma, m >= 1,
/// (i, m) != (0, 1).
ChainQ closed_form_E(std::int64_t i, std::int64_t m, std::int64_t sigma);

/// prod_{k=1..m} k kappa((k-1) sigma, m) / ((m+1-k) kappa(k sigma, m)), the
/// factor relating [h^m] to itself along the chain h_{0/m}, ..., h_{m sigma/m}.
Rat telescoping_product(std::int64_t m, std::int64_t sigma);

/// Graded blocks (trivial class) are keyed by mu-bar; the others by winding
/// and parity.
struct BlockKey {
  std::int64_t torsion = 0;
  bool graded = false;
  std::int64_t degree = 0;  // mu-bar when graded, winding otherwise
  int parity = 0;

  [[nodiscard]] std::string describe() const;
  friend bool operator==(const BlockKey&, const BlockKey&) = default;
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

BlockKey block_of(const Orbit& o, std::int64_t sigma);

struct HomologyBlock {
  BlockKey key;
  std::int64_t winding = 0;
  std::vector<Orbit> generators;
  std::size_t kernel_rank = 0;
  std::size_t image_rank = 0;
  std::size_t homology_rank = 0;
  std::vector<ChainQ> representatives;
};

struct HomologyReport {
  std::int64_t sigma = 1;
  std::int64_t max_winding = 1;
  std::int64_t safe_window = 0;      // largest reported winding
  std::vector<HomologyBlock> blocks;  // sorted by key

  [[nodiscard]] const HomologyBlock* find(const BlockKey& key) const;
  /// Nonzero homology ranks by block.
  [[nodiscard]] std::map<BlockKey, std::size_t> rank_table() const;
};

/// Homology of the truncated complex, reported for windings <= max_winding - 1.
/// Requires max_winding >= 2.
HomologyReport homology_report(const BoundaryMatrix& d, Execution exec = Execution::Parallel);
HomologyReport homology_report(std::int64_t sigma, std::int64_t max_winding,
                               const SignConvention& signs, Execution exec = Execution::Parallel);

/// d E_{i,m} = 0 for every (i, m) with m <= max_winding.
CheckResult verify_cycles(std::int64_t sigma, std::int64_t max_winding, const SignConvention& signs);

/// Kernel of d on each elliptic (class, winding) block with winding <=
/// max_winding - 1 equals the span of the matching E_{i,m}.
CheckResult elliptic_kernel_matches_closed_forms(const BoundaryMatrix& d);
CheckResult elliptic_kernel_matches_closed_forms(std::int64_t sigma, std::int64_t max_winding,
                                                 const SignConvention& signs);

/// Expected nonzero ranks inside the window of windings <= max_winding - 1.
std::map<BlockKey, std::size_t> predicted_rank_table(std::int64_t sigma, std::int64_t max_winding);

struct TheoremCheck {
  bool pass = false;
  std::vector<std::string> diffs;
};

/// Compares a report against the predicted table. Requires max_winding >= 3.
TheoremCheck verify_theorem(const HomologyReport& report);
TheoremCheck verify_theorem(std::int64_t sigma, std::int64_t max_winding, const SignConvention& signs);

}  // namespace twisthc
