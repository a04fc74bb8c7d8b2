#include "twisthc/differential.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace twisthc {

SignConvention::SignConvention(int c_minus, int c_plus) : c_minus_(c_minus), c_plus_(c_plus) {
  if ((c_minus != 1 && c_minus != -1) || (c_plus != 1 && c_plus != -1)) {
    throw std::invalid_argument("SignConvention: signs must be +1 or -1");
  }
  if (c_minus * c_plus != -1) throw std::invalid_argument("SignConvention: need c_minus c_plus = -1");
}

SignConvention SignConvention::unchecked(int c_minus, int c_plus) {
  SignConvention s;
  s.c_minus_ = c_minus;
  s.c_plus_ = c_plus;
  return s;
}

std::int64_t relative_dimension(const Orbit& lower, const Orbit& upper) {
  if (lower.kind == OrbitKind::Binding || upper.kind == OrbitKind::Binding) {
    throw std::invalid_argument("relative_dimension: binding orbits are outside the complex");
  }
  int r = 0;
  if (parity(upper) == 1 && parity(lower) == 0) r = 1;
  if (parity(upper) == 0 && parity(lower) == 1) r = -1;
  return r + 2 * (upper.m - lower.m);
}

std::vector<ConnectingPair> allowed_pairs(std::int64_t sigma, std::int64_t max_winding) {
  if (sigma < 1) throw std::invalid_argument("allowed_pairs: sigma must be >= 1");
  std::vector<ConnectingPair> out;
  auto lower_h = [sigma](std::int64_t raw, std::int64_t m) {
    return normalize_index(raw, m, sigma, OrbitKind::HyperbolicT);
  };
  for (std::int64_t m = 1; m <= max_winding; ++m) {
    for (std::int64_t n = 1; n < sigma * m; ++n) {
      out.push_back({1, Orbit::elliptic(n, m), Orbit::hyperbolic(n, m), n});
    }
    if (m < 2) continue;
    for (std::int64_t n = 1; n < sigma * (m - 1); ++n) {
      out.push_back({2, lower_h(n, m - 1), Orbit::elliptic(n, m), n});
    }
    out.push_back({3, Orbit::core(m - 1), Orbit::elliptic(sigma * (m - 1), m), sigma * (m - 1)});
    for (std::int64_t n = sigma + 1; n < sigma * m; ++n) {
      out.push_back({4, lower_h(n - sigma, m - 1), Orbit::elliptic(n, m), n - sigma});
    }
    out.push_back({5, Orbit::core(m - 1), Orbit::elliptic(sigma, m), 0});
  }
  return out;
}

Rat moduli_count_raw(std::int64_t lower_numerator, std::int64_t n, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("moduli_count: upper winding must be >= 2");
  const std::int64_t numer = std::llabs(lower_numerator * m - n * (m - 1));
  const std::int64_t denom = kappa(lower_numerator, m - 1) * kappa(n, m);
  return Rat(numer, denom);
}

Rat moduli_count(const Orbit& lower, const Orbit& upper, std::int64_t sigma) {
  validate(lower, sigma);
  validate(upper, sigma);
  const std::int64_t m = upper.m;
  const std::int64_t n = upper.n;
  if (upper.kind != OrbitKind::EllipticT || m < 2 || lower.m != m - 1 || parity(lower) != 1) {
    throw std::invalid_argument("moduli_count: pair " + lower.label() + ", " + upper.label() +
                                " is not in families 2-5");
  }
  std::int64_t n_prime = 0;
  if (lower.kind == OrbitKind::CoreH) {
    if (n == sigma) {
      n_prime = 0;
    } else if (n == sigma * (m - 1)) {
      n_prime = n;
    } else {
      throw std::invalid_argument("moduli_count: h^{m-1} only pairs with e_{sigma/m} or e_{sigma(m-1)/m}");
    }
  } else {
    n_prime = lower.n;
    if (n_prime != n && n_prime != n - sigma) {
      throw std::invalid_argument("moduli_count: need n' = n or n - sigma");
    }
  }
  Rat count = moduli_count_raw(n_prime, n, m);
  if (!count.is_integer() || count.sign() <= 0) {
    throw std::logic_error("moduli_count: count is not a positive integer for " + upper.label());
  }
  return count;
}

std::vector<BoundaryTerm> boundary_terms(const Orbit& o, std::int64_t sigma,
                                         const SignConvention& signs) {
  validate(o, sigma);
  std::vector<BoundaryTerm> out;
  if (o.kind != OrbitKind::EllipticT || o.m == 1) return out;  // cases 1-3

  const std::int64_t n = o.n;
  const std::int64_t m = o.m;
  const std::int64_t top = sigma * (m - 1);

  auto emit = [&](int family, std::int64_t raw, const Rat& coeff) {
    out.push_back({family, raw, normalize_index(raw, m - 1, sigma, OrbitKind::HyperbolicT), coeff});
  };
  // Same-numerator term: cases 4 and 6.
  if (n <= top) {
    emit(n < top ? 2 : 3, n, Rat(signs.c_minus()) * Rat(n, kappa(n, m - 1)));
  }
  // Shifted term: cases 5 and 6.
  if (n >= sigma) {
    emit(n > sigma ? 4 : 5, n - sigma,
         Rat(signs.c_plus()) * Rat(sigma * m - n, kappa(n - sigma, m - 1)));
  }
  return out;
}

ChainQ boundary(const Orbit& o, std::int64_t sigma, const SignConvention& signs) {
  ChainQ out;
  for (const auto& t : boundary_terms(o, sigma, signs)) out.add(t.target, t.coefficient);
  return out;
}

ChainQ boundary(const ChainQ& chain, std::int64_t sigma, const SignConvention& signs) {
  ChainQ out;
  for (const auto& [o, c] : chain.terms()) out += c * boundary(o, sigma, signs);
  return out;
}

std::optional<std::size_t> BoundaryMatrix::index_of(const Orbit& o) const {
  const auto it = index.find(o);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ChainQ BoundaryMatrix::column_chain(std::size_t col) const {
  ChainQ out;
  for (const auto& [r, v] : matrix.column(col)) out.add(generators[r], v);
  return out;
}

BoundaryMatrix boundary_matrix(std::int64_t sigma, std::int64_t max_winding,
                               const SignConvention& signs, bool include_binding, Execution exec) {
  BoundaryMatrix d;
  d.sigma = sigma;
  d.max_winding = max_winding;
  d.generators = enumerate(sigma, max_winding, include_binding);
  for (std::size_t i = 0; i < d.generators.size(); ++i) d.index.emplace(d.generators[i], i);
  const std::size_t n = d.generators.size();
  d.matrix = SparseMatQ(n, n);

  auto column_of = [&](std::size_t j) {
    SparseMatQ::Column col;
    const ChainQ chain = boundary(d.generators[j], sigma, signs);
    for (const auto& [target, coeff] : chain.terms()) col.emplace(d.index.at(target), coeff);
    return col;
  };

  if (exec == Execution::Serial) {
    for (std::size_t j = 0; j < n; ++j) d.matrix.set_column(j, column_of(j));
  } else {
    std::vector<SparseMatQ::Column> cols(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t j = 0; j < n; ++j) cols[j] = column_of(j);
    for (std::size_t j = 0; j < n; ++j) d.matrix.set_column(j, std::move(cols[j]));
  }
  return d;
}

bool verify_d_squared(const BoundaryMatrix& d) { return (d.matrix * d.matrix).is_zero(); }

bool verify_d_squared(std::int64_t sigma, std::int64_t max_winding, const SignConvention& signs) {
  return verify_d_squared(boundary_matrix(sigma, max_winding, signs));
}

namespace {

int family_sign(int family, const SignConvention& signs) {
  return (family == 2 || family == 3) ? signs.c_minus() : signs.c_plus();
}

std::string describe_entry(const Orbit& upper, const Orbit& lower, const Rat& got,
                           const Rat& expected) {
  std::ostringstream os;
  os << "<d " << upper.label() << ", " << lower.label() << "> = " << got << ", expected "
     << expected;
  return os.str();
}

}  // namespace

CheckResult coefficient_consistency(const BoundaryMatrix& d, const SignConvention& signs) {
  const std::int64_t sigma = d.sigma;

  // Expected matrix built from the moduli counts alone.
  std::map<Orbit, ChainQ> expected;
  for (const auto& pair : allowed_pairs(sigma, d.max_winding)) {
    if (pair.family == 1) continue;
    const Orbit& up = pair.upper;
    const Rat count = moduli_count_raw(pair.lower_numerator, up.n, up.m);
    if (!count.is_integer() || count.sign() <= 0) {
      return CheckResult::fail("moduli count " + count.to_string() + " is not a positive integer for " +
                               pair.lower.label() + " -> " + up.label());
    }
    const Rat magnitude = Rat(kappa(up.n, up.m)) * count;

    bool matched = false;
    for (const auto& term : boundary_terms(up, sigma, signs)) {
      if (term.family != pair.family) continue;
      matched = true;
      if (term.raw_target_n != pair.lower_numerator || term.target != pair.lower ||
          term.coefficient.abs() != magnitude) {
        return CheckResult::fail("family " + std::to_string(pair.family) + ": " +
                                 describe_entry(up, pair.lower, term.coefficient, magnitude));
      }
    }
    if (!matched) {
      return CheckResult::fail("family " + std::to_string(pair.family) + " pair " +
                               pair.lower.label() + " -> " + up.label() + " missing from boundary");
    }
    expected[up].add(pair.lower, Rat(family_sign(pair.family, signs)) * magnitude);
  }

  for (std::size_t j = 0; j < d.generators.size(); ++j) {
    const Orbit& up = d.generators[j];
    const ChainQ got = d.column_chain(j);
    const auto it = expected.find(up);
    const ChainQ want = it == expected.end() ? ChainQ{} : it->second;
    if (got == want) continue;
    for (const auto& [lower, c] : got.terms()) {
      if (want.coefficient(lower) != c) {
        return CheckResult::fail(describe_entry(up, lower, c, want.coefficient(lower)));
      }
    }
    for (const auto& [lower, c] : want.terms()) {
      return CheckResult::fail(describe_entry(up, lower, got.coefficient(lower), c));
    }
  }
  return CheckResult::pass();
}

CheckResult coefficient_consistency(std::int64_t sigma, std::int64_t max_winding,
                                    const SignConvention& signs) {
  return coefficient_consistency(boundary_matrix(sigma, max_winding, signs), signs);
}

CheckResult structure_check(const BoundaryMatrix& d) {
  for (std::size_t j = 0; j < d.generators.size(); ++j) {
    const Orbit& up = d.generators[j];
    for (const auto& [r, v] : d.matrix.column(j)) {
      const Orbit& low = d.generators[r];
      if (homology_class(low, d.sigma) != homology_class(up, d.sigma)) {
        return CheckResult::fail("class not preserved: " + up.label() + " -> " + low.label());
      }
      if (low.m + 1 != up.m) {
        return CheckResult::fail("winding does not drop by one: " + up.label() + " -> " + low.label());
      }
      if (relative_dimension(low, up) != 1) {
        return CheckResult::fail("relative dimension != 1: " + up.label() + " -> " + low.label());
      }
    }
  }
  return CheckResult::pass();
}

CheckResult energy_filter(const BoundaryMatrix& d, const LocalModelParams& params,
                          std::int64_t max_winding_checked, double tol) {
  for (std::size_t j = 0; j < d.generators.size(); ++j) {
    const Orbit& up = d.generators[j];
    if (up.m > max_winding_checked) continue;
    for (const auto& [r, v] : d.matrix.column(j)) {
      const Orbit& low = d.generators[r];
      const double e = energy(low, up, params);
      if (e < -tol) {
        std::ostringstream os;
        os << "negative energy " << e << " for " << low.label() << " -> " << up.label();
        return CheckResult::fail(os.str());
      }
    }
  }
  return CheckResult::pass();
}

}  // namespace twisthc
