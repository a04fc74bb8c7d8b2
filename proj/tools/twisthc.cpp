// Command-line front end: generator listings, homology tables, the invariant
// suite and the C^2 local-model probes.

#include <complex>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twisthc/parallel.hpp"
#include "twisthc/report.hpp"

namespace {

using namespace twisthc;

struct CommonOptions {
  std::int64_t sigma = 1;
  std::int64_t max_winding = 1;
  int c_minus = 1;
  bool include_binding = false;
  std::string format = "text";
  std::optional<double> c;
  std::optional<double> epsilon;
  std::optional<double> c0;
  std::optional<double> r_tilde;
  std::optional<double> k_xh;
};

void add_complex_options(CLI::App* cmd, CommonOptions& o, bool needs_winding) {
  cmd->add_option("--sigma", o.sigma, "Number of full twists")->check(CLI::PositiveNumber);
  if (needs_winding) {
    cmd->add_option("--max-winding", o.max_winding, "Largest winding around the binding")
        ->required()
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--c-minus", o.c_minus, "Sign c_-; c_+ = -c_-")->check(CLI::IsMember({-1, 1}));
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
}

void add_model_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--c", o.c, "Rotation constant of the binding model");
  cmd->add_option("--epsilon", o.epsilon, "Tube radius bound");
  cmd->add_option("--c0", o.c0, "Constant term of K on the twist region");
  cmd->add_option("--r-tilde", o.r_tilde, "Slope offset of K (small, negative)");
  cmd->add_option("--k-xh", o.k_xh, "Value of K at the hyperbolic point");
}

RunConfig make_config(const CommonOptions& o) {
  RunConfig cfg;
  cfg.sigma = o.sigma;
  cfg.max_winding = o.max_winding;
  cfg.signs = SignConvention(o.c_minus, -o.c_minus);
  cfg.include_binding = o.include_binding;
  cfg.format = parse_format(o.format);
  cfg.local = LocalModelParams::for_sigma(o.sigma);
  if (o.c) cfg.local.c = *o.c;
  if (o.epsilon) cfg.local.epsilon = *o.epsilon;
  if (o.c0) cfg.local.c0 = *o.c0;
  if (o.r_tilde) cfg.local.r_tilde = *o.r_tilde;
  if (o.k_xh) cfg.local.k_xh = *o.k_xh;
  return cfg;
}

std::complex<double> parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  is >> re;
  if (is.peek() != EOF) is >> comma >> im;
  if (is.fail() || (comma != 0 && comma != ',')) throw std::invalid_argument("expected RE,IM: " + s);
  return {re, im};
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"Contact homology of Dehn-twist open books"};
  app.require_subcommand(1);

  CommonOptions gen_opts;
  auto* gen = app.add_subcommand("generators", "List Reeb orbit generators");
  add_complex_options(gen, gen_opts, true);
  add_model_options(gen, gen_opts);
  gen->add_flag("--include-binding", gen_opts.include_binding, "Also list binding iterates B^m");

  CommonOptions hom_opts;
  auto* hom = app.add_subcommand("homology", "Compute homology and compare with the predicted table");
  add_complex_options(hom, hom_opts, true);

  CommonOptions ver_opts;
  bool inject_fault = false;
  auto* ver = app.add_subcommand("verify", "Run the invariant suite under both sign conventions");
  add_complex_options(ver, ver_opts, true);
  add_model_options(ver, ver_opts);
  ver->add_flag("--inject-fault", inject_fault, "Corrupt one boundary coefficient (test hook)");

  CommonOptions loc_opts;
  auto* loc = app.add_subcommand("local", "Probe the C^2 surgery model");
  loc->require_subcommand(1);

  FlowRequest flow_req;
  std::string z1 = "1,0";
  std::string z2 = "0,0";
  auto* flow = loc->add_subcommand("flow", "Sample the flow Y^t");
  flow->add_option("--t", flow_req.t, "Final time");
  flow->add_option("--steps", flow_req.steps, "Number of time steps")->check(CLI::PositiveNumber);
  flow->add_option("--z1", z1, "Initial z1 as RE,IM");
  flow->add_option("--z2", z2, "Initial z2 as RE,IM");

  std::int64_t m_max = 10;
  bool integrate = false;
  auto* rmap = loc->add_subcommand("return-map", "Linearized return maps of binding iterates");
  rmap->add_option("--m-max", m_max, "Largest iterate")->check(CLI::PositiveNumber);
  rmap->add_flag("--integrate", integrate, "Cross-check against RK4 integration");

  LaurentExponents exps;
  auto* laurent = loc->add_subcommand("laurent", "Classify a punctured map by its Laurent exponents");
  laurent->add_option("--n1", exps.n1, "Order of z1")->required();
  laurent->add_option("--n2", exps.n2, "Order of z2")->required();

  ActionRequest act_req;
  auto* act = loc->add_subcommand("action", "Action profile A(q) = n q + m K(q)");
  act->add_option("--n", act_req.n, "Numerator")->required()->check(CLI::PositiveNumber);
  act->add_option("--m", act_req.m, "Winding")->required()->check(CLI::PositiveNumber);
  act->add_option("--grid", act_req.grid, "Grid points")->check(CLI::Range(2, 100000000));
  act->add_flag("--emit-curve", act_req.emit_curve, "Print the sampled curve");

  for (auto* sub : {flow, rmap, laurent, act}) {
    sub->add_option("--sigma", loc_opts.sigma, "Number of full twists")->check(CLI::PositiveNumber);
    sub->add_option("--format", loc_opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    add_model_options(sub, loc_opts);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::cout << render_generators(make_config(gen_opts));
      return 0;
    }
    if (hom->parsed()) {
      bool passed = false;
      std::cout << render_homology(make_config(hom_opts), &passed);
      return passed ? 0 : 1;
    }
    if (ver->parsed()) {
      const RunConfig cfg = make_config(ver_opts);
      const VerifyOutcome outcome = run_verify_suite(cfg, inject_fault);
      std::cout << render_verify(cfg, outcome);
      return outcome.ok() ? 0 : 1;
    }
    const RunConfig cfg = make_config(loc_opts);
    if (flow->parsed()) {
      flow_req.z = {parse_complex(z1), parse_complex(z2)};
      std::cout << render_flow(cfg, flow_req);
    } else if (rmap->parsed()) {
      std::cout << render_return_map(cfg, m_max, integrate);
    } else if (laurent->parsed()) {
      std::cout << render_laurent(cfg, exps);
    } else if (act->parsed()) {
      std::cout << render_action(cfg, act_req);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
