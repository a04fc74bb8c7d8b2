#include "twisthc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace twisthc {

using nlohmann::json;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::string csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
        if (!quote) {
          out += cells[i];
          continue;
        }
        out += '"';
        for (char ch : cells[i]) {
          if (ch == '"') out += '"';
          out += ch;
        }
        out += '"';
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }

  [[nodiscard]] std::string text() const {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os << cells[i];
        if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size() + 2, ' ');
      }
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json real_or_null(std::optional<double> x) {
  if (!x) return nullptr;
  return round_real(*x);
}

json signs_json(const SignConvention& s) {
  return json{{"c_minus", s.c_minus()}, {"c_plus", s.c_plus()}};
}

std::optional<double> try_action(const Orbit& o, const LocalModelParams& p) {
  try {
    return action(o, p);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

json chain_json(const ChainQ& c) {
  json terms = json::array();
  for (const auto& [o, coeff] : c.terms()) {
    terms.push_back(json{{"orbit", o.label()}, {"coefficient", coeff.to_string()}});
  }
  return terms;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown output format: " + name);
}

void RunConfig::validate() const {
  if (sigma < 1) throw std::invalid_argument("sigma must be >= 1");
  if (max_winding < 1) throw std::invalid_argument("max winding must be >= 1");
  if (!signs.is_legal()) throw std::invalid_argument("sign convention must satisfy c_minus c_plus = -1");
  if (local.sigma != sigma) throw std::invalid_argument("local model sigma does not match");
  local.validate();
}

std::string format_real(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_real(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_real(x).c_str(), nullptr);
}

// ---------------------------------------------------------------------------

std::string render_generators(const RunConfig& cfg) {
  cfg.validate();
  const auto gens = enumerate(cfg.sigma, cfg.max_winding, cfg.include_binding);

  if (cfg.format == OutputFormat::Json) {
    json list = json::array();
    for (const auto& o : gens) {
      const auto cls = homology_class(o, cfg.sigma);
      const auto mu = mu_bar(o, cfg.sigma);
      list.push_back(json{{"label", o.label()},
                          {"kind", to_string(o.kind)},
                          {"n", o.n},
                          {"m", o.m},
                          {"class", json{{"torsion", cls.torsion}, {"free", cls.free}}},
                          {"parity", parity(o)},
                          {"mu_bar", mu ? json(*mu) : json(nullptr)},
                          {"action", real_or_null(try_action(o, cfg.local))}});
    }
    return dump(json{{"command", "generators"},
                     {"sigma", cfg.sigma},
                     {"max_winding", cfg.max_winding},
                     {"include_binding", cfg.include_binding},
                     {"generators", std::move(list)}});
  }

  Table t;
  t.header = {"label", "kind", "n", "m", "class_torsion", "class_free", "parity", "mu_bar", "action"};
  for (const auto& o : gens) {
    const auto cls = homology_class(o, cfg.sigma);
    const auto mu = mu_bar(o, cfg.sigma);
    const auto a = try_action(o, cfg.local);
    t.rows.push_back({o.label(), to_string(o.kind), std::to_string(o.n), std::to_string(o.m),
                      std::to_string(cls.torsion), std::to_string(cls.free), std::to_string(parity(o)),
                      mu ? std::to_string(*mu) : "null", a ? format_real(*a) : "null"});
  }
  return cfg.format == OutputFormat::Csv ? t.csv() : t.text();
}

// ---------------------------------------------------------------------------

std::string render_homology(const RunConfig& cfg, bool* passed) {
  cfg.validate();
  if (cfg.max_winding < 3) throw std::invalid_argument("homology needs --max-winding >= 3");
  const HomologyReport rep = homology_report(cfg.sigma, cfg.max_winding, cfg.signs);
  const TheoremCheck check = verify_theorem(rep);
  if (passed) *passed = check.pass;
  const std::string verdict = check.pass ? "PASS" : "FAIL";

  if (cfg.format == OutputFormat::Json) {
    json blocks = json::array();
    for (const auto& b : rep.blocks) {
      json gens = json::array();
      for (const auto& o : b.generators) gens.push_back(o.label());
      json reps = json::array();
      for (const auto& r : b.representatives) reps.push_back(chain_json(r));
      blocks.push_back(json{{"class_torsion", b.key.torsion},
                            {"graded", b.key.graded},
                            {"grading_or_winding", b.key.degree},
                            {"parity", b.key.parity},
                            {"winding", b.winding},
                            {"generators", std::move(gens)},
                            {"kernel", b.kernel_rank},
                            {"image", b.image_rank},
                            {"homology", b.homology_rank},
                            {"representatives", std::move(reps)}});
    }
    return dump(json{{"command", "homology"},
                     {"sigma", rep.sigma},
                     {"max_winding", rep.max_winding},
                     {"safe_window", rep.safe_window},
                     {"signs", signs_json(cfg.signs)},
                     {"blocks", std::move(blocks)},
                     {"verdict", verdict},
                     {"diffs", check.diffs}});
  }

  Table t;
  t.header = {"class_torsion", "grading_or_winding", "parity", "kernel", "image", "homology"};
  for (const auto& b : rep.blocks) {
    t.rows.push_back({std::to_string(b.key.torsion), std::to_string(b.key.degree),
                      std::to_string(b.key.parity), std::to_string(b.kernel_rank),
                      std::to_string(b.image_rank), std::to_string(b.homology_rank)});
  }
  if (cfg.format == OutputFormat::Csv) return t.csv() + "# verdict: " + verdict + "\n";

  std::ostringstream os;
  os << "sigma=" << rep.sigma << " max_winding=" << rep.max_winding
     << " safe_window=" << rep.safe_window << " (mu-bar when class 0, winding otherwise)\n";
  os << t.text() << "\nrepresentatives:\n";
  for (const auto& b : rep.blocks) {
    for (const auto& r : b.representatives) os << "  [" << b.key.describe() << "] " << r.to_string() << '\n';
  }
  for (const auto& d : check.diffs) os << "diff: " << d << '\n';
  os << verdict << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

bool VerifyOutcome::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.result.ok; });
}

namespace {

CheckResult grading_sanity(std::int64_t sigma, std::int64_t max_winding) {
  std::int64_t lowest = std::numeric_limits<std::int64_t>::max();
  for (const auto& o : enumerate(sigma, max_winding, true)) {
    if (!is_good(o)) return CheckResult::fail(o.label() + " is bad");
    const auto mu = mu_bar(o, sigma);
    if (!mu) continue;
    if (!is_contractible(o, sigma)) return CheckResult::fail(o.label() + " graded but not contractible");
    if (((*mu % 2) + 2) % 2 != parity(o)) {
      return CheckResult::fail("mu-bar parity mismatch at " + o.label());
    }
    lowest = std::min(lowest, *mu);
  }
  if (lowest != 1) return CheckResult::fail("minimum mu-bar is " + std::to_string(lowest));
  return CheckResult::pass();
}

CheckResult telescoping_check(std::int64_t sigma, std::int64_t max_winding) {
  for (std::int64_t m = 1; m <= max_winding; ++m) {
    const Rat p = telescoping_product(m, sigma);
    if (p != Rat(1)) return CheckResult::fail("product at m=" + std::to_string(m) + " is " + p.to_string());
  }
  return CheckResult::pass();
}

void corrupt_first_entry(BoundaryMatrix& d) {
  for (std::size_t j = 0; j < d.matrix.cols(); ++j) {
    const auto& col = d.matrix.column(j);
    if (col.empty()) continue;
    const auto [r, v] = *col.begin();
    d.matrix.set(r, j, v * Rat(2));
    return;
  }
}

std::string sign_tag(const SignConvention& s) {
  return std::string("[c-=") + (s.c_minus() > 0 ? "+1" : "-1") + "]";
}

}  // namespace

VerifyOutcome run_verify_suite(const RunConfig& cfg, bool inject_fault) {
  cfg.validate();
  VerifyOutcome out;
  auto record = [&out](std::string name, CheckResult r) { out.checks.push_back({std::move(name), std::move(r)}); };

  std::vector<std::map<BlockKey, std::size_t>> tables;
  for (const SignConvention& s : {SignConvention(1, -1), SignConvention(-1, 1)}) {
    const std::string tag = sign_tag(s);
    BoundaryMatrix d = boundary_matrix(cfg.sigma, cfg.max_winding, s);
    if (inject_fault) corrupt_first_entry(d);

    record("d_squared" + tag, verify_d_squared(d) ? CheckResult::pass()
                                                  : CheckResult::fail("d o d != 0"));
    record("coefficient_consistency" + tag, coefficient_consistency(d, s));
    record("structure" + tag, structure_check(d));
    record("closed_form_cycles" + tag, verify_cycles(cfg.sigma, cfg.max_winding, s));
    if (cfg.max_winding >= 2) {
      record("elliptic_kernel" + tag, elliptic_kernel_matches_closed_forms(d));
      const HomologyReport rep = homology_report(d);
      tables.push_back(rep.rank_table());
      if (cfg.max_winding >= 3) {
        const TheoremCheck th = verify_theorem(rep);
        record("homology_table" + tag,
               th.pass ? CheckResult::pass() : CheckResult::fail(th.diffs.front()));
      }
    }
    // Actions are realized for windings up to 5 on the default collar.
    record("energy_filter" + tag,
           energy_filter(d, cfg.local, std::min<std::int64_t>(cfg.max_winding, 5)));
  }
  if (tables.size() == 2) {
    record("sign_independence",
           tables[0] == tables[1] ? CheckResult::pass()
                                  : CheckResult::fail("rank tables differ between sign conventions"));
  }
  record("grading_sanity", grading_sanity(cfg.sigma, cfg.max_winding));
  record("telescoping", telescoping_check(cfg.sigma, cfg.max_winding));
  return out;
}

std::string render_verify(const RunConfig& cfg, const VerifyOutcome& outcome) {
  if (cfg.format == OutputFormat::Json) {
    json checks = json::array();
    for (const auto& c : outcome.checks) {
      checks.push_back(json{{"name", c.name},
                            {"ok", c.result.ok},
                            {"counterexample", c.result.ok ? json(nullptr) : json(c.result.counterexample)}});
    }
    return dump(json{{"command", "verify"},
                     {"sigma", cfg.sigma},
                     {"max_winding", cfg.max_winding},
                     {"checks", std::move(checks)},
                     {"ok", outcome.ok()}});
  }
  if (cfg.format == OutputFormat::Csv) {
    Table t;
    t.header = {"check", "status", "counterexample"};
    for (const auto& c : outcome.checks) {
      t.rows.push_back({c.name, c.result.ok ? "PASS" : "FAIL", c.result.counterexample});
    }
    return t.csv();
  }
  std::ostringstream os;
  for (const auto& c : outcome.checks) {
    os << (c.result.ok ? "PASS " : "FAIL ") << c.name;
    if (!c.result.ok) os << ": " << c.result.counterexample;
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::string render_flow(const RunConfig& cfg, const FlowRequest& req) {
  if (req.steps < 1) throw std::invalid_argument("flow: steps must be >= 1");
  const double c = cfg.local.c;
  const double rho0 = flow_invariant_rho(req.z, c);
  Table t;
  t.header = {"t", "z1_re", "z1_im", "z2_re", "z2_im", "rho", "theta1", "theta2"};
  json rows = json::array();
  for (int k = 0; k <= req.steps; ++k) {
    const double tk = req.t * static_cast<double>(k) / static_cast<double>(req.steps);
    const C2Point w = flow_y(tk, req.z, c);
    const double rho = flow_invariant_rho(w, c);
    const double th1 = std::arg(w[0]);
    const double th2 = std::arg(w[1]);
    t.rows.push_back({format_real(tk), format_real(w[0].real()), format_real(w[0].imag()),
                      format_real(w[1].real()), format_real(w[1].imag()), format_real(rho),
                      format_real(th1), format_real(th2)});
    rows.push_back(json{{"t", round_real(tk)},
                        {"z1", {round_real(w[0].real()), round_real(w[0].imag())}},
                        {"z2", {round_real(w[1].real()), round_real(w[1].imag())}},
                        {"rho", round_real(rho)},
                        {"theta1", round_real(th1)},
                        {"theta2", round_real(th2)}});
  }
  if (cfg.format == OutputFormat::Json) {
    return dump(json{{"command", "local flow"}, {"c", round_real(c)}, {"rho_initial", round_real(rho0)},
                     {"samples", std::move(rows)}});
  }
  return cfg.format == OutputFormat::Csv ? t.csv() : t.text();
}

std::string render_return_map(const RunConfig& cfg, std::int64_t m_max, bool integrate) {
  if (m_max < 1) throw std::invalid_argument("return-map: m-max must be >= 1");
  const double c = cfg.local.c;
  Table t;
  t.header = {"m", "l11", "l12", "l21", "l22", "det_minus_id", "type", "integration_error"};
  json rows = json::array();
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const Mat2 l = return_map(m, c);
    const double det_minus_id = (l[0][0] - 1.0) * (l[1][1] - 1.0) - l[0][1] * l[1][0];
    const ReturnMapType type = classify_return_map(l);
    std::optional<double> err;
    if (integrate) {
      const Mat2 li = return_map_integrated(m, c);
      double e = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) e = std::max(e, std::abs(li[i][j] - l[i][j]));
      }
      err = e;
    }
    t.rows.push_back({std::to_string(m), format_real(l[0][0]), format_real(l[0][1]), format_real(l[1][0]),
                      format_real(l[1][1]), format_real(det_minus_id), to_string(type),
                      err ? format_real(*err) : "null"});
    rows.push_back(json{{"m", m},
                        {"matrix", {{round_real(l[0][0]), round_real(l[0][1])},
                                    {round_real(l[1][0]), round_real(l[1][1])}}},
                        {"det_minus_id", round_real(det_minus_id)},
                        {"type", to_string(type)},
                        {"integration_error", real_or_null(err)}});
  }
  if (cfg.format == OutputFormat::Json) {
    return dump(json{{"command", "local return-map"}, {"c", round_real(c)}, {"rows", std::move(rows)}});
  }
  return cfg.format == OutputFormat::Csv ? t.csv() : t.text();
}

std::string render_laurent(const RunConfig& cfg, const LaurentExponents& exps) {
  const LaurentViews v = laurent_classify(exps, cfg.local.c);
  std::string pairing;
  if (exps.n1 == 0) {
    pairing = "disc meeting R x gamma with multiplicity " + std::to_string(exps.n2) +
              " <-> half-cylinder asymptotic to gamma_hat^" + std::to_string(exps.n2) + " at -inf";
  }
  if (cfg.format == OutputFormat::Json) {
    return dump(json{{"command", "local laurent"},
                     {"c", round_real(cfg.local.c)},
                     {"n1", exps.n1},
                     {"n2", exps.n2},
                     {"n_view", v.n_view.describe()},
                     {"n_hat_view", v.n_hat_view.describe()},
                     {"correspondence", pairing.empty() ? json(nullptr) : json(pairing)}});
  }
  Table t;
  t.header = {"n1", "n2", "n_view", "n_hat_view", "correspondence"};
  t.rows.push_back({std::to_string(exps.n1), std::to_string(exps.n2), v.n_view.describe(),
                    v.n_hat_view.describe(), pairing.empty() ? "null" : pairing});
  return cfg.format == OutputFormat::Csv ? t.csv() : t.text();
}

std::string render_action(const RunConfig& cfg, const ActionRequest& req) {
  cfg.local.validate();
  const ActionProfile prof = action_profile(req.n, req.m, cfg.local, req.grid);
  const KProfile k = adjacent_k_profile(cfg.local);
  const double a_min = static_cast<double>(req.n) * prof.q_o + static_cast<double>(req.m) * k.k(prof.q_o);

  if (cfg.format == OutputFormat::Json) {
    json j{{"command", "local action"},
           {"n", req.n},
           {"m", req.m},
           {"grid", req.grid},
           {"q_o", round_real(prof.q_o)},
           {"action_at_q_o", round_real(a_min)},
           {"slope_at_q_o", round_real(prof.slope_at_q_o)},
           {"monotone_in_distance", prof.monotone_in_distance}};
    if (req.emit_curve) {
      json curve = json::array();
      for (std::size_t i = 0; i < prof.q.size(); ++i) {
        curve.push_back({round_real(prof.q[i]), round_real(prof.action[i])});
      }
      j["curve"] = std::move(curve);
    }
    return dump(j);
  }
  Table t;
  if (req.emit_curve) {
    t.header = {"q", "action"};
    for (std::size_t i = 0; i < prof.q.size(); ++i) {
      t.rows.push_back({format_real(prof.q[i]), format_real(prof.action[i])});
    }
  } else {
    t.header = {"n", "m", "q_o", "action_at_q_o", "slope_at_q_o", "monotone_in_distance"};
    t.rows.push_back({std::to_string(req.n), std::to_string(req.m), format_real(prof.q_o),
                      format_real(a_min), format_real(prof.slope_at_q_o),
                      prof.monotone_in_distance ? "true" : "false"});
  }
  return cfg.format == OutputFormat::Csv ? t.csv() : t.text();
}

}  // namespace twisthc
