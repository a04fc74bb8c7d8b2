#include "twisthc/sparse_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace twisthc {

SparseMatQ::SparseMatQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatQ SparseMatQ::identity(std::size_t n) {
  SparseMatQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rat(1));
  return m;
}

SparseMatQ SparseMatQ::from_dense(const std::vector<VecQ>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  SparseMatQ m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw std::invalid_argument("from_dense: ragged rows");
    for (std::size_t c = 0; c < ncols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

std::size_t SparseMatQ::nnz() const {
  std::size_t total = 0;
  for (const auto& col : cols_) total += col.size();
  return total;
}

void SparseMatQ::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_.size()) throw std::out_of_range("SparseMatQ: index out of range");
}

void SparseMatQ::set(std::size_t r, std::size_t c, const Rat& value) {
  check(r, c);
  if (value.is_zero()) {
    cols_[c].erase(r);
  } else {
    cols_[c].insert_or_assign(r, value);
  }
}

void SparseMatQ::add(std::size_t r, std::size_t c, const Rat& value) {
  check(r, c);
  if (value.is_zero()) return;
  auto [it, inserted] = cols_[c].try_emplace(r, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) cols_[c].erase(it);
  }
}

Rat SparseMatQ::get(std::size_t r, std::size_t c) const {
  check(r, c);
  const auto it = cols_[c].find(r);
  return it == cols_[c].end() ? Rat(0) : it->second;
}

void SparseMatQ::set_column(std::size_t c, Column col) {
  if (c >= cols_.size()) throw std::out_of_range("SparseMatQ::set_column: column out of range");
  std::erase_if(col, [](const auto& kv) { return kv.second.is_zero(); });
  if (!col.empty() && col.rbegin()->first >= rows_) {
    throw std::out_of_range("SparseMatQ::set_column: row out of range");
  }
  cols_[c] = std::move(col);
}

VecQ SparseMatQ::apply(std::span<const Rat> x) const {
  if (x.size() != cols()) throw std::invalid_argument("apply: dimension mismatch");
  VecQ y(rows_, Rat(0));
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    if (x[c].is_zero()) continue;
    for (const auto& [r, v] : cols_[c]) y[r] += v * x[c];
  }
  return y;
}

SparseMatQ SparseMatQ::submatrix(std::span<const std::size_t> row_idx,
                                 std::span<const std::size_t> col_idx) const {
  std::map<std::size_t, std::size_t> row_pos;
  for (std::size_t i = 0; i < row_idx.size(); ++i) row_pos.emplace(row_idx[i], i);
  SparseMatQ out(row_idx.size(), col_idx.size());
  for (std::size_t j = 0; j < col_idx.size(); ++j) {
    for (const auto& [r, v] : column(col_idx[j])) {
      if (auto it = row_pos.find(r); it != row_pos.end()) out.cols_[j].emplace(it->second, v);
    }
  }
  return out;
}

std::vector<VecQ> SparseMatQ::to_dense() const {
  std::vector<VecQ> d(rows_, VecQ(cols(), Rat(0)));
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    for (const auto& [r, v] : cols_[c]) d[r][c] = v;
  }
  return d;
}

SparseMatQ operator*(const SparseMatQ& a, const SparseMatQ& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatQ product: dimension mismatch");
  SparseMatQ out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    SparseMatQ::Column acc;
    for (const auto& [k, bkj] : b.cols_[j]) {
      for (const auto& [i, aik] : a.cols_[k]) acc[i] += aik * bkj;
    }
    out.set_column(j, std::move(acc));
  }
  return out;
}

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix integer_rows(const SparseMatQ& a) {
  IntMatrix m(a.rows(), std::vector<mpz_class>(a.cols(), 0));
  std::vector<mpz_class> row_lcm(a.rows(), 1);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (const auto& [r, v] : a.column(c)) mpz_lcm(row_lcm[r].get_mpz_t(), row_lcm[r].get_mpz_t(),
                                                   v.den().get_mpz_t());
  }
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (const auto& [r, v] : a.column(c)) m[r][c] = v.num() * (row_lcm[r] / v.den());
  }
  return m;
}

struct Echelon {
  IntMatrix rows;
  std::vector<std::size_t> pivot_cols;
};

Echelon bareiss_echelon(IntMatrix m, std::size_t ncols) {
  Echelon e;
  const std::size_t nrows = m.size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
    std::size_t pivot = rank;
    while (pivot < nrows && m[pivot][col] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(m[rank], m[pivot]);
    const mpz_class& p = m[rank][col];
    for (std::size_t i = rank + 1; i < nrows; ++i) {
      const mpz_class f = m[i][col];
      for (std::size_t j = col + 1; j < ncols; ++j) {
        mpz_class t = p * m[i][j] - f * m[rank][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(t);
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    e.pivot_cols.push_back(col);
    ++rank;
  }
  m.resize(rank);
  e.rows = std::move(m);
  return e;
}

}  // namespace

RankKernel rank_and_kernel(const SparseMatQ& a) {
  const std::size_t ncols = a.cols();
  Echelon e = bareiss_echelon(integer_rows(a), ncols);
  RankKernel out;
  out.rank = e.pivot_cols.size();

  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    VecQ x(ncols, Rat(0));
    x[free] = Rat(1);
    for (std::size_t r = out.rank; r-- > 0;) {
      const std::size_t pc = e.pivot_cols[r];
      mpq_class acc = 0;
      for (std::size_t j = pc + 1; j < ncols; ++j) {
        if (e.rows[r][j] != 0 && !x[j].is_zero()) acc += mpq_class(e.rows[r][j]) * x[j].raw();
      }
      x[pc] = Rat(mpq_class(-acc / mpq_class(e.rows[r][pc])));
    }
    out.kernel.push_back(std::move(x));
  }
  return out;
}

std::size_t image_rank(const SparseMatQ& a) {
  return bareiss_echelon(integer_rows(a), a.cols()).pivot_cols.size();
}

std::size_t rank_of_vectors(std::span<const VecQ> vectors, std::size_t length) {
  SparseMatQ m(length, vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != length) throw std::invalid_argument("rank_of_vectors: length mismatch");
    for (std::size_t i = 0; i < length; ++i) m.set(i, j, vectors[j][i]);
  }
  return image_rank(m);
}

}  // namespace twisthc
