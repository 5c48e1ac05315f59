// Command-line front end: bound evaluation, end-to-end construction,
// lemma audits and the exp -> sigmoid/relu/step lift.
//
// Exit-code policy: theorem-true violations (strict lemma inequalities,
// membership sums) fail the process; measured claims (Bernoulli gap
// satisfaction, sup-error bands) are recorded in the reports and exit 0.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "swsynth/bernoulli.hpp"
#include "swsynth/combinatorics.hpp"
#include "swsynth/format.hpp"
#include "swsynth/global_approx.hpp"
#include "swsynth/halton.hpp"
#include "swsynth/sigmoidal.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace swsynth;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string config_path;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output_dir = ".";
  ordered_json config;  // parsed --config file, if any

  void add_flags(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file; flags override its values");
    app->add_option("--seed", seed, "RNG seed (default 0)");
    app->add_option("--threads", threads, "worker cap for internal sweeps");
    app->add_option("--output", output_dir, "report output directory");
  }

  void load_config(const CLI::App* app) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + config_path);
    config = ordered_json::parse(in);
    (void)app;
  }

  // Config value wins only when the flag was not given on the command line.
  template <typename T>
  void from_config(const CLI::App* app, const std::string& flag, const std::string& key, T& value) {
    if (app->count(flag) == 0 && config.contains(key)) value = config.at(key).get<T>();
  }

  void write_text(const std::string& name, const std::string& text) const {
    fs::create_directories(output_dir);
    fs::path p = fs::path(output_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
  }

  void write_json(const std::string& name, const ordered_json& j) const {
    write_text(name, j.dump(2) + "\n");
  }
};

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

ordered_json construction_params(int d, double diam, double delta, double eps, double omega) {
  ordered_json j;
  j["d"] = d;
  j["diam_K"] = diam;
  j["delta"] = delta;
  j["eps"] = eps;
  j["omega"] = omega;
  return j;
}

ordered_json report_head(const ordered_json& resolved, const ordered_json& params) {
  ordered_json j;
  j["artifact_version"] = kVersion;
  j["config"] = resolved;
  j["construction_params"] = params;
  return j;
}

// ---------------------------------------------------------------- bound ---

int cmd_bound(Common& common, int d, double diam, double delta, double eps,
              const std::string& eps_sweep) {
  TheoremBound tb = theorem_bound(d, diam, delta, eps);
  ordered_json resolved{{"dim", d}, {"diam", diam}, {"delta", delta}, {"eps", eps},
                        {"eps_sweep", eps_sweep}, {"seed", common.seed}};
  ordered_json rep = report_head(resolved, construction_params(d, diam, delta, eps, 2.0));
  rep["C"] = tb.C;
  rep["lattice_factor_log10"] = tb.lattice_factor.log_abs / std::numbers::ln10;
  rep["h_log10"] = tb.h.log_abs / std::numbers::ln10;
  common.write_json("bound.json", rep);

  if (!eps_sweep.empty()) {
    std::ostringstream csv;
    csv << "eps,C,h_log10\n";
    for (double e : parse_doubles(eps_sweep)) {
      TheoremBound t = theorem_bound(d, diam, delta, e);
      csv << format_double(e) << ',' << format_double(t.C) << ','
          << format_double(t.h.log_abs / std::numbers::ln10) << '\n';
    }
    common.write_text("bound_sweep.csv", csv.str());
  }
  std::cout << "h_log10 = " << format_double(rep["h_log10"].get<double>()) << "\n";
  return 0;
}

// ------------------------------------------------------------ construct ---

TargetFunction make_function(const std::string& name, const HyperCube& domain,
                             double value, const std::vector<double>& coeffs, double offset,
                             double amplitude, double sigma, double freq, double sharpness,
                             const std::vector<double>& fcenter, const std::string& csv_path) {
  if (!csv_path.empty()) return TargetFunction::from_csv(csv_path);
  std::vector<double> center = fcenter.empty() ? domain.center : fcenter;
  if (name == "constant") return TargetFunction::constant(domain, value);
  if (name == "linear") {
    std::vector<double> w = coeffs;
    if (w.empty()) {
      w.assign(static_cast<std::size_t>(domain.dim()), 0.0);
      w[0] = 1.0;
    }
    return TargetFunction::linear(domain, w, offset);
  }
  if (name == "gaussian_bump") return TargetFunction::gaussian_bump(domain, amplitude, sigma, center);
  if (name == "sin_product") return TargetFunction::sin_product(domain, amplitude, freq);
  if (name == "runge") return TargetFunction::runge(domain, sharpness, center);
  throw CLI::ValidationError("--function", "unknown catalog id: " + name);
}

int cmd_construct(Common& common, const TargetFunction& f, double eps_target,
                  const BuildOptions& opts, int sample_density, bool expand,
                  std::uint64_t k_override, const ordered_json& resolved) {
  double eps = eps_target / 2.0;  // user-facing guarantee is the theorem's 2*eps
  GridConstruction gc = build_grid(f, eps, opts);
  SupError se = measure_sup_error(gc, f, sample_density);

  int d = f.dim();
  double diam = f.domain().diameter();
  TheoremBound tb = theorem_bound(d, diam, gc.delta, eps, /*force_low_dim=*/d < 2);

  ordered_json rep = report_head(resolved, construction_params(d, diam, gc.delta, eps, 2.0));
  rep["eps_target"] = eps_target;
  rep["eps"] = eps;
  rep["delta"] = gc.delta;
  rep["r"] = gc.r;
  rep["num_cubes"] = gc.centers.size();
  rep["n_slices"] = gc.n_slices;
  rep["per_cube_eps"] = gc.per_cube_eps;
  rep["range_shift"] = gc.range_shift;
  rep["range_width"] = gc.range_width;
  rep["sup_err"] = se.sup_err;
  rep["witness"] = se.witness;
  rep["two_eps_band"] = 2.0 * eps;
  rep["two_eps_band_satisfied"] = se.sup_err < 2.0 * eps;
  rep["bound_log10"] = tb.h.log_abs / std::numbers::ln10;
  rep["measured_units_log10"] = expanded_unit_count_log10(gc);

  if (expand) {
    // Feasible only at test scale: every per-cube indicator is expanded with
    // the overridden k, slice products are multiplied symbolically.
    try {
      std::optional<std::uint64_t> ko =
          k_override > 0 ? std::optional<std::uint64_t>(k_override) : std::nullopt;
      SymbolicExpSum total;
      total.dim = d;
      total.scale = gc.specs.empty() ? 1.0 : gc.specs.front().s;
      std::vector<int> zero(static_cast<std::size_t>(d), 0);
      total.terms.emplace(zero, SymbolicCoeff{LogValue::from_real(gc.range_shift), false});
      for (int i = 1; i <= gc.n_slices; ++i) {
        SymbolicExpSum prod;  // prod (1 - g_x) over the slice
        prod.dim = d;
        prod.scale = total.scale;
        prod.terms.emplace(zero, SymbolicCoeff{LogValue::one(), false});
        for (std::size_t c : gc.slices[static_cast<std::size_t>(i - 1)]) {
          ExpandedIndicator e = expand_indicator(gc.specs[c], ko);
          prod = multiply(prod, affine_combine(-1.0, e.sum, 1.0));
          if (prod.term_count() > 1000000)
            throw std::invalid_argument("expansion infeasible at these parameters");
        }
        // total += eps * (1 - prod)
        SymbolicExpSum pi = affine_combine(-1.0, prod, 1.0);
        for (const auto& [z, cf] : affine_combine(eps, pi, 0.0).terms) {
          auto it = total.terms.find(z);
          if (it == total.terms.end()) {
            total.terms.emplace(z, cf);
          } else {
            SignedSum s = lv_sum({it->second.value, cf.value});
            if (s.value.sign == 0) {
              total.terms.erase(it);
            } else {
              it->second.value = s.value;
              it->second.degraded = it->second.degraded || cf.degraded || s.degraded;
            }
          }
        }
      }
      ExpNetwork net = to_network(total);
      fs::create_directories(common.output_dir);
  save_network(net, (fs::path(common.output_dir) / "network.json").string());
      rep["expanded_units"] = net.unit_count();
      rep["k_overridden"] = k_override > 0;
    } catch (const std::invalid_argument& e) {
      rep["expansion_skipped"] = e.what();
    }
  }

  common.write_json("construct_report.json", rep);
  std::cout << "num_cubes = " << gc.centers.size() << ", n_slices = " << gc.n_slices
            << ", sup_err = " << format_double(se.sup_err) << "\n";
  return 0;
}

// ---------------------------------------------------------------- audit ---

int cmd_audit_bernoulli(Common& common, const std::string& eps_grid_s,
                        const std::string& ab_grid_s, int samples) {
  std::vector<double> eps_grid = parse_doubles(eps_grid_s);
  std::vector<std::pair<double, double>> ab_grid;
  std::stringstream ss(ab_grid_s);
  std::string cell;
  while (std::getline(ss, cell, ';')) {
    auto colon = cell.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--alpha-beta-grid", "expected alpha:beta pairs separated by ';'");
    ab_grid.emplace_back(std::stod(cell.substr(0, colon)), std::stod(cell.substr(colon + 1)));
  }
  auto reports = sweep_gap(eps_grid, ab_grid, samples, common.seed);
  common.write_text("bernoulli_sweep.csv", gap_reports_to_csv(reports));
  std::size_t lower_failures = 0;
  for (const auto& r : reports)
    if (!r.lower_claim_holds) ++lower_failures;
  std::cout << reports.size() << " rows, " << lower_failures
            << " lower-claim failures (measured claim, recorded)\n";
  return 0;  // measured claims never gate
}

int cmd_audit_combinatorics(Common& common) {
  std::ostringstream csv;
  csv << "lemma,params,exact,bound_log10,holds\n";
  bool all_hold = true;
  auto emit = [&](const char* lemma, const CountBoundReport& r) {
    csv << lemma << ',' << '"' << r.params << '"' << ',' << r.exact << ','
        << format_double(r.bound.log_abs / std::numbers::ln10) << ',' << (r.holds ? 1 : 0) << '\n';
    all_hold = all_hold && r.holds;
  };
  for (int n = 2; n <= 40; ++n)
    for (int k = 1; k <= n; ++k) emit("binomial", robbins_binomial_check(n, k));
  for (int k = 1; k <= 3; ++k)
    for (int n = 0; n <= 12; ++n) emit("lattice_l1", lattice_l1_count(n, k));
  for (int k = 4; k <= 6; ++k)
    for (int n = 0; n <= 20; n += 4) emit("lattice_l1", lattice_l1_count(n, k));
  // the ball bound carries no 1/rho^d factor, so it only dominates the
  // count for rho >= 1; the gated grid stays in that regime
  for (int d = 1; d <= 3; ++d)
    for (double R : {0.5, 1.0, 1.5, 2.5, 4.0})
      for (double rho : {1.0, 1.5, 2.0, 2.5, 3.0})
        emit("lattice_ball", lattice_ball_count(d, R, rho));
  common.write_text("combinatorics_audit.csv", csv.str());
  std::cout << (all_hold ? "all bounds hold\n" : "BOUND VIOLATION\n");
  return all_hold ? 0 : 1;
}

int cmd_audit_cube(Common& common, int dim, int num_specs, int samples_per_spec) {
  std::mt19937_64 rng(common.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ordered_json spec_reports = ordered_json::array();
  bool clean = true;

  for (int sidx = 0; sidx < num_specs; ++sidx) {
    std::vector<double> center(static_cast<std::size_t>(dim));
    for (auto& c : center) c = 2.0 * unit(rng) - 1.0;
    double r = 0.1 + 0.9 * unit(rng);
    double omega = 1.2 + 1.8 * unit(rng);
    HyperCube cube{center, r};
    // K: a bounding box that strictly contains I(x0, omega r).
    HyperCube K{center, omega * r * (1.5 + unit(rng))};
    CubeIndicatorSpec spec = make_spec(cube, omega, 0.1, K.diameter());

    // Inside: Halton in I(x0, r) plus corners and face midpoints.
    std::vector<std::vector<double>> inside = sample_points_in_cube(cube, 0, samples_per_spec);
    for (unsigned corner = 0; corner < (1u << dim); ++corner) {
      std::vector<double> p = center;
      for (int i = 0; i < dim; ++i) p[static_cast<std::size_t>(i)] += ((corner >> i) & 1u) ? r : -r;
      inside.push_back(p);
    }
    for (int i = 0; i < dim; ++i)
      for (double s : {-r, r}) {
        std::vector<double> p = center;
        p[static_cast<std::size_t>(i)] += s;
        inside.push_back(p);
      }
    // Outside: rejection-sample K minus I(x0, omega r).
    std::vector<std::vector<double>> outside;
    for (const auto& p : sample_points_in_cube(K, 0, static_cast<std::size_t>(samples_per_spec) * 8)) {
      if (!cube.contains(p, omega)) outside.push_back(p);
      if (outside.size() >= static_cast<std::size_t>(samples_per_spec)) break;
    }

    MembershipReport mr = check_membership_inequalities(spec, inside, outside);

    // p-value separation: p <= gamma/2 inside, p >= gamma outside (on K).
    std::size_t p_violations = 0;
    double log_gamma = spec.gamma.log_abs;
    for (const auto& y : inside)
      if (eval_p(spec, y).log_abs > log_gamma - std::log(2.0) + 1e-12) ++p_violations;
    for (const auto& y : outside)
      if (eval_p(spec, y).log_abs < log_gamma - 1e-12) ++p_violations;

    clean = clean && mr.clean() && p_violations == 0;
    ordered_json js;
    js["spec"] = sidx;
    js["r"] = r;
    js["omega"] = omega;
    js["inside_checked"] = mr.inside_checked;
    js["outside_checked"] = mr.outside_checked;
    js["inside_violations"] = mr.inside_violations.size();
    js["outside_violations"] = mr.outside_violations.size();
    js["p_separation_violations"] = p_violations;
    spec_reports.push_back(std::move(js));
  }

  ordered_json resolved{{"dim", dim}, {"specs", num_specs}, {"samples", samples_per_spec},
                        {"seed", common.seed}};
  ordered_json rep = report_head(resolved, construction_params(dim, 0.0, 0.0, 0.1, 0.0));
  rep["specs"] = std::move(spec_reports);
  rep["clean"] = clean;
  common.write_json("cube_audit.json", rep);
  std::cout << (clean ? "membership inequalities hold\n" : "MEMBERSHIP VIOLATION\n");
  return clean ? 0 : 1;
}

// ----------------------------------------------------------------- lift ---

int cmd_lift(Common& common, const std::string& input, const std::vector<double>& dom_center,
             double dom_half, double eps, const std::string& kind_s, const std::string& out_name) {
  ExpNetwork net = load_network(input);
  std::vector<double> center = dom_center;
  if (center.empty()) center.assign(static_cast<std::size_t>(net.dim), 0.0);
  HyperCube K{center, dom_half};
  Transfer kind = transfer_from_name(kind_s);

  LiftedNetwork lifted = lift_to_two_layer(net, K, eps, kind);
  fs::create_directories(common.output_dir);
  save_network(lifted.net, (fs::path(common.output_dir) / out_name).string());

  double probe_err = 0.0;
  auto probes = sample_points_in_cube(K, 0, 1000);
  for (const auto& p : probes)
    probe_err = std::max(probe_err, std::abs(eval_network(net, p) - eval_network(lifted.net, p)));

  ordered_json resolved{{"input", input}, {"domain_half", dom_half}, {"eps", eps},
                        {"kind", kind_s}, {"seed", common.seed}};
  ordered_json rep = report_head(resolved, construction_params(net.dim, K.diameter(), 0.0, eps, 0.0));
  rep["source_units"] = net.unit_count();
  rep["lifted_units"] = lifted.net.unit_count();
  rep["units_per_source"] = lifted.units_per_source;
  rep["budget"] = lifted.budget;
  rep["probe_err"] = probe_err;
  rep["budget_satisfied"] = probe_err <= lifted.budget;
  common.write_json("lift_report.json", rep);
  std::cout << "lifted " << net.unit_count() << " -> " << lifted.net.unit_count()
            << " units, probe_err = " << format_double(probe_err) << "\n";
  return probe_err <= lifted.budget ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shallow exp-network synthesis and bound audit"};
  app.require_subcommand(1);

  Common common;

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate the final unit-count bound");
  int b_dim = 2;
  double b_diam = 1.0, b_delta = 0.1, b_eps = 0.1;
  std::string b_sweep;
  bound->add_option("--dim", b_dim, "input dimension d (>= 2)");
  bound->add_option("--diam", b_diam, "diameter of K");
  bound->add_option("--delta", b_delta, "inverse modulus of continuity");
  bound->add_option("--eps", b_eps, "accuracy");
  bound->add_option("--eps-sweep", b_sweep, "comma-separated eps values for a CSV sweep");
  common.add_flags(bound);

  // construct
  auto* construct = app.add_subcommand("construct", "run the end-to-end construction");
  std::string c_function = "linear", c_csv;
  double c_value = 0.0, c_offset = 0.0, c_amplitude = 1.0, c_sigma = 0.25, c_freq = 3.0,
         c_sharpness = 25.0;
  std::vector<double> c_coeffs, c_fcenter, c_dom_center;
  double c_dom_half = 0.5, c_eps_target = 0.5, c_r_override = 0.0;
  int c_mod_density = 12, c_subgrid = 3, c_sample_density = 20;
  bool c_expand = false;
  std::uint64_t c_k_override = 0;
  construct->add_option("--function", c_function,
                        "catalog id: constant|linear|gaussian_bump|sin_product|runge");
  construct->add_option("--csv", c_csv, "sampled function CSV (header x1,...,xd,value)");
  construct->add_option("--value", c_value, "constant value");
  construct->add_option("--coeffs", c_coeffs, "linear coefficients")->delimiter(',');
  construct->add_option("--offset", c_offset, "linear offset");
  construct->add_option("--amplitude", c_amplitude, "gaussian/sin amplitude");
  construct->add_option("--sigma", c_sigma, "gaussian width");
  construct->add_option("--freq", c_freq, "sin frequency");
  construct->add_option("--sharpness", c_sharpness, "runge sharpness");
  construct->add_option("--fcenter", c_fcenter, "gaussian/runge center")->delimiter(',');
  construct->add_option("--domain-center", c_dom_center, "center of K")->delimiter(',');
  construct->add_option("--domain-half", c_dom_half, "half-width of K");
  construct->add_option("--eps-target", c_eps_target, "target sup-error (theorem's 2*eps)");
  construct->add_option("--r-override", c_r_override, "test hook: force cube half-width r");
  construct->add_option("--modulus-density", c_mod_density, "grid density for the modulus estimator");
  construct->add_option("--stats-subgrid", c_subgrid, "per-axis sub-grid for v_min/v_max");
  construct->add_option("--sample-density", c_sample_density, "per-axis density of the sup-error sweep");
  construct->add_flag("--expand", c_expand, "emit the fully expanded network when feasible");
  construct->add_option("--k-override", c_k_override, "test-scale k for the expansion");
  common.add_flags(construct);

  // audit
  auto* audit = app.add_subcommand("audit", "lemma audits");
  audit->require_subcommand(1);
  auto* a_bern = audit->add_subcommand("bernoulli", "gap amplification sweep");
  std::string ab_eps_grid = "0.5,0.25,0.1,0.05";
  std::string ab_ab_grid = "0.25:0.5;0.1:0.3;0.05:0.2;0.01:0.05";
  int ab_samples = 8;
  a_bern->add_option("--eps-grid", ab_eps_grid, "comma-separated eps values");
  a_bern->add_option("--alpha-beta-grid", ab_ab_grid, "alpha:beta pairs separated by ';'");
  a_bern->add_option("--samples", ab_samples, "uniform samples per cell");
  common.add_flags(a_bern);

  auto* a_comb = audit->add_subcommand("combinatorics", "counting bounds over default ranges");
  common.add_flags(a_comb);

  auto* a_cube = audit->add_subcommand("cube", "membership inequality sampling audit");
  int ac_dim = 2, ac_specs = 5, ac_samples = 1000;
  a_cube->add_option("--dim", ac_dim, "cube dimension");
  a_cube->add_option("--specs", ac_specs, "number of random specs");
  a_cube->add_option("--samples", ac_samples, "samples per region per spec");
  common.add_flags(a_cube);

  // lift
  auto* lift = app.add_subcommand("lift", "replace exp units by 1D transfer sums");
  std::string l_input, l_kind = "step", l_out = "lifted_network.json";
  std::vector<double> l_dom_center;
  double l_dom_half = 0.5, l_eps = 0.2;
  lift->add_option("--input", l_input, "exp network JSON file")->required();
  lift->add_option("--domain-center", l_dom_center, "center of K")->delimiter(',');
  lift->add_option("--domain-half", l_dom_half, "half-width of K");
  lift->add_option("--eps", l_eps, "composite error budget");
  lift->add_option("--kind", l_kind, "target transfer: step|sigmoid|relu");
  lift->add_option("--output-file", l_out, "lifted network file name");
  common.add_flags(lift);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) {
      common.load_config(bound);
      common.from_config(bound, "--dim", "dim", b_dim);
      common.from_config(bound, "--diam", "diam", b_diam);
      common.from_config(bound, "--delta", "delta", b_delta);
      common.from_config(bound, "--eps", "eps", b_eps);
      return cmd_bound(common, b_dim, b_diam, b_delta, b_eps, b_sweep);
    }
    if (construct->parsed()) {
      common.load_config(construct);
      common.from_config(construct, "--function", "function", c_function);
      common.from_config(construct, "--eps-target", "eps_target", c_eps_target);
      if (c_dom_center.empty()) c_dom_center.assign(2, 0.5);
      HyperCube domain{c_dom_center, c_dom_half};
      TargetFunction f = make_function(c_function, domain, c_value, c_coeffs, c_offset,
                                       c_amplitude, c_sigma, c_freq, c_sharpness, c_fcenter, c_csv);
      BuildOptions opts;
      opts.modulus_grid_density = c_mod_density;
      opts.stats_subgrid = c_subgrid;
      if (c_r_override > 0.0) opts.r_override = c_r_override;
      ordered_json resolved{{"function", c_csv.empty() ? c_function : "sampled"},
                            {"csv", c_csv},
                            {"domain_center", c_dom_center},
                            {"domain_half", c_dom_half},
                            {"eps_target", c_eps_target},
                            {"r_override", c_r_override},
                            {"modulus_density", c_mod_density},
                            {"stats_subgrid", c_subgrid},
                            {"sample_density", c_sample_density},
                            {"seed", common.seed}};
      return cmd_construct(common, f, c_eps_target, opts, c_sample_density, c_expand,
                           c_k_override, resolved);
    }
    if (a_bern->parsed()) {
      common.load_config(a_bern);
      return cmd_audit_bernoulli(common, ab_eps_grid, ab_ab_grid, ab_samples);
    }
    if (a_comb->parsed()) {
      common.load_config(a_comb);
      return cmd_audit_combinatorics(common);
    }
    if (a_cube->parsed()) {
      common.load_config(a_cube);
      return cmd_audit_cube(common, ac_dim, ac_specs, ac_samples);
    }
    if (lift->parsed()) {
      common.load_config(lift);
      return cmd_lift(common, l_input, l_dom_center, l_dom_half, l_eps, l_kind, l_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
