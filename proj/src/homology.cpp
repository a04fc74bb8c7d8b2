#include "twisthc/homology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace twisthc {

ChainQ closed_form_E(std::int64_t i, std::int64_t m, std::int64_t sigma) {
  if (sigma < 1) throw std::invalid_argument("closed_form_E: sigma must be >= 1");
  if (i < 0 || i >= sigma) throw std::invalid_argument("closed_form_E: need 0 <= i < sigma");
  if (m < 1) throw std::invalid_argument("closed_form_E: m must be >= 1");
  if (i == 0 && m == 1) throw std::invalid_argument("closed_form_E: (0, 1) is excluded");

  ChainQ e;
  if (i == 0) {
    e.add(Orbit::elliptic(sigma, m), Rat(1));
    Rat coeff(1);
    for (std::int64_t k = 2; k <= m - 1; ++k) {
      const std::int64_t j = k - 1;
      coeff *= Rat(j, m - j - 1);
      e.add(Orbit::elliptic(k * sigma, m), coeff);
    }
    return e;
  }
  if (m == 1) return ChainQ(Orbit::elliptic(i, 1), Rat(1));

  e.add(Orbit::elliptic(sigma - i, m), Rat(1));
  Rat coeff(1);
  for (std::int64_t k = 2; k <= m; ++k) {
    const std::int64_t j = k - 1;
    coeff *= Rat(j * sigma - i, (m - j - 1) * sigma + i);
    e.add(Orbit::elliptic(k * sigma - i, m), coeff);
  }
  return e;
}

Rat telescoping_product(std::int64_t m, std::int64_t sigma) {
  if (m < 1 || sigma < 1) throw std::invalid_argument("telescoping_product: need m, sigma >= 1");
  Rat p(1);
  for (std::int64_t k = 1; k <= m; ++k) {
    p *= Rat(k * kappa((k - 1) * sigma, m), (m + 1 - k) * kappa(k * sigma, m));
  }
  return p;
}

std::string BlockKey::describe() const {
  std::string s = "class " + std::to_string(torsion);
  if (graded) return s + ", mu=" + std::to_string(degree);
  return s + ", winding " + std::to_string(degree) + ", " + (parity == 0 ? "even" : "odd");
}

BlockKey block_of(const Orbit& o, std::int64_t sigma) {
  const OrbitClass cls = homology_class(o, sigma);
  BlockKey key;
  key.torsion = cls.torsion;
  key.parity = parity(o);
  if (const auto mu = mu_bar(o, sigma)) {
    key.graded = true;
    key.degree = *mu;
  } else {
    key.degree = o.m;
  }
  return key;
}

const HomologyBlock* HomologyReport::find(const BlockKey& key) const {
  const auto it = std::lower_bound(blocks.begin(), blocks.end(), key,
                                   [](const HomologyBlock& b, const BlockKey& k) { return b.key < k; });
  return (it != blocks.end() && it->key == key) ? &*it : nullptr;
}

std::map<BlockKey, std::size_t> HomologyReport::rank_table() const {
  std::map<BlockKey, std::size_t> out;
  for (const auto& b : blocks) {
    if (b.homology_rank > 0) out.emplace(b.key, b.homology_rank);
  }
  return out;
}

namespace {

struct BlockLayout {
  BlockKey key;
  std::vector<std::size_t> members;   // generator indices, canonical order
  std::vector<std::size_t> incoming;  // columns whose boundary lands here
};

std::vector<BlockLayout> layout_blocks(const BoundaryMatrix& d, std::int64_t window) {
  std::map<BlockKey, BlockLayout> by_key;
  std::vector<BlockKey> key_of(d.generators.size());
  for (std::size_t i = 0; i < d.generators.size(); ++i) {
    key_of[i] = block_of(d.generators[i], d.sigma);
    auto& blk = by_key[key_of[i]];
    blk.key = key_of[i];
    blk.members.push_back(i);
  }
  for (std::size_t j = 0; j < d.generators.size(); ++j) {
    const auto& col = d.matrix.column(j);
    if (col.empty()) continue;
    const BlockKey target = key_of[col.begin()->first];
    for (const auto& [r, v] : col) {
      if (key_of[r] != target) {
        throw std::logic_error("boundary of " + d.generators[j].label() + " spans several blocks");
      }
    }
    by_key[target].incoming.push_back(j);
  }

  std::vector<BlockLayout> out;
  for (auto& [key, blk] : by_key) {
    const std::int64_t w = d.generators[blk.members.front()].m;
    for (auto i : blk.members) {
      if (d.generators[i].m != w) throw std::logic_error("block mixes windings: " + key.describe());
    }
    if (w <= window) out.push_back(std::move(blk));
  }
  return out;
}

std::vector<std::size_t> touched_rows(const SparseMatQ& m, const std::vector<std::size_t>& cols) {
  std::set<std::size_t> rows;
  for (auto c : cols) {
    for (const auto& [r, v] : m.column(c)) rows.insert(r);
  }
  return {rows.begin(), rows.end()};
}

ChainQ to_chain(const VecQ& v, const std::vector<Orbit>& gens, const std::vector<std::size_t>& members) {
  ChainQ c;
  for (std::size_t k = 0; k < v.size(); ++k) c.add(gens[members[k]], v[k]);
  return c;
}

VecQ normalize_leading(VecQ v) {
  const auto it = std::find_if(v.begin(), v.end(), [](const Rat& x) { return !x.is_zero(); });
  if (it == v.end()) return v;
  const Rat lead = *it;
  for (auto& x : v) x /= lead;
  return v;
}

HomologyBlock compute_block(const BoundaryMatrix& d, const BlockLayout& layout) {
  HomologyBlock out;
  out.key = layout.key;
  out.winding = d.generators[layout.members.front()].m;
  for (auto i : layout.members) out.generators.push_back(d.generators[i]);
  const std::size_t dim = layout.members.size();

  // Kernel of d restricted to this block; zero rows do not affect it.
  const auto rows = touched_rows(d.matrix, layout.members);
  const RankKernel rk = rank_and_kernel(d.matrix.submatrix(rows, layout.members));
  out.kernel_rank = rk.kernel.size();

  // Image of d inside this block, as vectors in block coordinates.
  const SparseMatQ into = d.matrix.submatrix(layout.members, layout.incoming);
  out.image_rank = image_rank(into);
  out.homology_rank = out.kernel_rank - out.image_rank;

  std::vector<VecQ> span;
  for (std::size_t c = 0; c < into.cols(); ++c) {
    VecQ v(dim, Rat(0));
    for (const auto& [r, x] : into.column(c)) v[r] = x;
    span.push_back(std::move(v));
  }
  std::size_t current = out.image_rank;
  // Later generators first, so h^m is preferred over h_{k sigma/m}.
  for (auto it = rk.kernel.rbegin(); it != rk.kernel.rend() && out.representatives.size() < out.homology_rank;
       ++it) {
    span.push_back(*it);
    const std::size_t r = rank_of_vectors(span, dim);
    if (r > current) {
      current = r;
      out.representatives.push_back(to_chain(normalize_leading(*it), d.generators, layout.members));
    } else {
      span.pop_back();
    }
  }
  return out;
}

}  // namespace

HomologyReport homology_report(const BoundaryMatrix& d, Execution exec) {
  if (d.max_winding < 2) throw std::invalid_argument("homology_report: max winding must be >= 2");
  HomologyReport rep;
  rep.sigma = d.sigma;
  rep.max_winding = d.max_winding;
  rep.safe_window = d.max_winding - 1;

  const auto layouts = layout_blocks(d, rep.safe_window);
  rep.blocks.resize(layouts.size());
  if (exec == Execution::Serial) {
    for (std::size_t b = 0; b < layouts.size(); ++b) rep.blocks[b] = compute_block(d, layouts[b]);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t b = 0; b < layouts.size(); ++b) rep.blocks[b] = compute_block(d, layouts[b]);
  }
  return rep;
}

HomologyReport homology_report(std::int64_t sigma, std::int64_t max_winding,
                               const SignConvention& signs, Execution exec) {
  if (max_winding < 2) throw std::invalid_argument("homology_report: max winding must be >= 2");
  return homology_report(boundary_matrix(sigma, max_winding, signs, false, exec), exec);
}

CheckResult verify_cycles(std::int64_t sigma, std::int64_t max_winding, const SignConvention& signs) {
  for (std::int64_t m = 1; m <= max_winding; ++m) {
    for (std::int64_t i = 0; i < sigma; ++i) {
      if (i == 0 && m == 1) continue;
      const ChainQ e = closed_form_E(i, m, sigma);
      const ChainQ de = boundary(e, sigma, signs);
      if (!de.is_zero()) {
        return CheckResult::fail("d E_{" + std::to_string(i) + "," + std::to_string(m) +
                                 "} = " + de.to_string());
      }
    }
  }
  return CheckResult::pass();
}

CheckResult elliptic_kernel_matches_closed_forms(const BoundaryMatrix& d) {
  const std::int64_t sigma = d.sigma;
  for (std::int64_t m = 1; m <= d.max_winding - 1; ++m) {
    for (std::int64_t t = 0; t < sigma; ++t) {
      std::vector<std::size_t> members;
      for (std::int64_t n = (t == 0 ? sigma : t); n < sigma * m; n += sigma) {
        members.push_back(*d.index_of(Orbit::elliptic(n, m)));
      }
      const std::string where = "class " + std::to_string(t) + ", winding " + std::to_string(m);
      if (members.empty()) {
        if (t == 0 && m == 1) continue;
        return CheckResult::fail("no elliptic generators in " + where);
      }
      const auto rows = touched_rows(d.matrix, members);
      const RankKernel rk = rank_and_kernel(d.matrix.submatrix(rows, members));

      // E_{i,m} lives in class -i mod sigma, except E_{i,1} = e_{i/1}.
      const std::int64_t i = m == 1 ? t : (sigma - t) % sigma;
      const ChainQ e = closed_form_E(i, m, sigma);
      VecQ ev(members.size(), Rat(0));
      std::size_t placed = 0;
      for (std::size_t k = 0; k < members.size(); ++k) {
        ev[k] = e.coefficient(d.generators[members[k]]);
        if (!ev[k].is_zero()) ++placed;
      }
      if (placed != e.size()) return CheckResult::fail("E outside its block at " + where);
      if (rk.kernel.size() != 1) {
        return CheckResult::fail("kernel rank " + std::to_string(rk.kernel.size()) + " != 1 at " + where);
      }
      std::vector<VecQ> both = rk.kernel;
      both.push_back(ev);
      if (rank_of_vectors(both, members.size()) != rk.kernel.size()) {
        return CheckResult::fail("E_{" + std::to_string(i) + "," + std::to_string(m) +
                                 "} not in the kernel at " + where);
      }
      if (rank_of_vectors(std::vector<VecQ>{ev}, members.size()) != rk.kernel.size()) {
        return CheckResult::fail("kernel larger than span of E at " + where);
      }
    }
  }
  return CheckResult::pass();
}

CheckResult elliptic_kernel_matches_closed_forms(std::int64_t sigma, std::int64_t max_winding,
                                                 const SignConvention& signs) {
  return elliptic_kernel_matches_closed_forms(boundary_matrix(sigma, max_winding, signs));
}

std::map<BlockKey, std::size_t> predicted_rank_table(std::int64_t sigma, std::int64_t max_winding) {
  std::map<BlockKey, std::size_t> table;
  const std::int64_t window = max_winding - 1;
  for (std::int64_t m = 1; m <= window; ++m) {
    table[BlockKey{0, true, 2 * m - 1, 1}] = 1;          // [h^m]
    if (m >= 2) table[BlockKey{0, true, 2 * m - 2, 0}] = 1;  // [E_{0,m}]
    for (std::int64_t t = 1; t < sigma; ++t) table[BlockKey{t, false, m, 0}] = 1;
  }
  return table;
}

TheoremCheck verify_theorem(const HomologyReport& report) {
  if (report.max_winding < 3) throw std::invalid_argument("verify_theorem: max winding must be >= 3");
  TheoremCheck out;
  const auto got = report.rank_table();
  const auto want = predicted_rank_table(report.sigma, report.max_winding);
  for (const auto& [key, rank] : want) {
    const auto it = got.find(key);
    const std::size_t have = it == got.end() ? 0 : it->second;
    if (have != rank) {
      out.diffs.push_back(key.describe() + ": rank " + std::to_string(have) + ", expected " +
                          std::to_string(rank));
    }
  }
  for (const auto& [key, rank] : got) {
    if (!want.contains(key)) {
      out.diffs.push_back(key.describe() + ": rank " + std::to_string(rank) + ", expected 0");
    }
  }
  for (const auto& b : report.blocks) {
    if (b.key.graded && b.key.degree <= 0 && b.homology_rank > 0) {
      out.diffs.push_back(b.key.describe() + ": homology in nonpositive degree");
    }
  }
  out.pass = out.diffs.empty();
  return out;
}

TheoremCheck verify_theorem(std::int64_t sigma, std::int64_t max_winding, const SignConvention& signs) {
  if (max_winding < 3) throw std::invalid_argument("verify_theorem: max winding must be >= 3");
  return verify_theorem(homology_report(sigma, max_winding, signs));
}

}  // namespace twisthc
