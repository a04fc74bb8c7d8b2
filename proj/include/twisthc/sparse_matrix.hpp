#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "twisthc/rat.hpp"

namespace twisthc {

using VecQ = std::vector<Rat>;

/// Sparse matrix over Q, stored column-major. Zero entries are never stored.
class SparseMatQ {
 public:
  using Column = std::map<std::size_t, Rat>;

  SparseMatQ() = default;
  SparseMatQ(std::size_t rows, std::size_t cols);

  static SparseMatQ identity(std::size_t n);
  static SparseMatQ from_dense(const std::vector<VecQ>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_.size(); }
  [[nodiscard]] std::size_t nnz() const;

  /// Sets entry (r, c); assigning zero erases it. Throws std::out_of_range.
  void set(std::size_t r, std::size_t c, const Rat& value);
  void add(std::size_t r, std::size_t c, const Rat& value);
  [[nodiscard]] Rat get(std::size_t r, std::size_t c) const;

  [[nodiscard]] const Column& column(std::size_t c) const { return cols_.at(c); }
  /// Replaces a whole column. Zero entries in `col` are dropped.
  void set_column(std::size_t c, Column col);

  [[nodiscard]] bool is_zero() const { return nnz() == 0; }
  [[nodiscard]] VecQ apply(std::span<const Rat> x) const;
  [[nodiscard]] SparseMatQ submatrix(std::span<const std::size_t> row_idx,
                                     std::span<const std::size_t> col_idx) const;
  [[nodiscard]] std::vector<VecQ> to_dense() const;

  friend SparseMatQ operator*(const SparseMatQ& a, const SparseMatQ& b);
  friend bool operator==(const SparseMatQ& a, const SparseMatQ& b) = default;

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::vector<Column> cols_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<VecQ> kernel;
};

/// Rank and a kernel basis via fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to integers; elimination then runs over Z with
/// exact divisions by the previous pivot. The kernel basis is the one read
/// off the reduced echelon form: one vector per free column, carrying 1 in
/// that column and 0 in every other free column. It depends only on the
/// row space of A, so results are deterministic.
RankKernel rank_and_kernel(const SparseMatQ& a);

std::size_t image_rank(const SparseMatQ& a);

/// Rank of a list of vectors of equal length (treated as columns).
std::size_t rank_of_vectors(std::span<const VecQ> vectors, std::size_t length);

}  // namespace twisthc
