// Command-line front end: every experiment in the library is reachable as a
// subcommand, emits CSV/JSON with round-trip number formatting, and leaves a
// RunRecord sidecar describing exactly what produced each file.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "arw/almost_period.hpp"
#include "arw/bessel.hpp"
#include "arw/covariance.hpp"
#include "arw/errors.hpp"
#include "arw/experiments.hpp"
#include "arw/field.hpp"
#include "arw/io.hpp"
#include "arw/lattice.hpp"
#include "arw/nodal.hpp"
#include "arw/version.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "json";
};

std::string resolve_out(const std::string& out) {
  if (out.empty()) return out;
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ARW_OUT_DIR")) p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

// Emits `content` to --out (or stdout) and drops the RunRecord sidecar next
// to the file.
void deliver(const GlobalOpts& g, const json& config, const std::string& content,
             std::chrono::steady_clock::time_point started) {
  const std::string path = resolve_out(g.out);
  if (path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  arw::write_text_file(path, content);
  arw::RunRecord rec;
  rec.config = config;
  rec.revision = arw::kSourceRevision;
  rec.seed = g.seed;
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  rec.outputs = {path};
  arw::write_text_file(path + ".run.json", rec.to_json().dump(2) + "\n");
}

json base_config(const std::string& command, const GlobalOpts& g) {
  return {{"schema_version", 1},
          {"command", command},
          {"seed", g.seed},
          {"threads", g.threads},
          {"format", g.format}};
}

std::vector<int> parse_int_range(const std::string& spec) {
  std::vector<int> out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(spec.substr(0, dots));
    std::string rest = spec.substr(dots + 2);
    int step = 1;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = std::stoi(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const int hi = std::stoi(rest);
    if (step < 1 || hi < lo) throw arw::ConfigInvalidError("bad range: " + spec);
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw arw::ConfigInvalidError("empty range: " + spec);
  return out;
}

arw::ScalarField make_phi(const std::string& name, const arw::Window& w) {
  if (name == "const") return [](double, double) { return 1.0; };
  if (name == "coordx") return [](double x, double) { return x; };
  if (name == "bump") {
    const auto [x0, y0, x1, y1] = w.bbox();
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double sx = 0.5 * (x1 - x0), sy = 0.5 * (y1 - y0);
    return [cx, cy, sx, sy](double x, double y) {
      const double u = (x - cx) / sx, v = (y - cy) / sy;
      const double q2 = u * u + v * v;
      return q2 < 1.0 ? std::exp(-1.0 / (1.0 - q2)) : 0.0;
    };
  }
  throw arw::ConfigInvalidError("unknown phi weight: " + name);
}

json almost_period_json(const arw::AlmostPeriod& ap) {
  return {{"tau", ap.tau},
          {"norm", ap.norm},
          {"sup_norm", ap.sup_norm()},
          {"method", arw::to_string(ap.method)},
          {"m", ap.m},
          {"epsilon_target", ap.epsilon_target},
          {"epsilon_certified", ap.epsilon_certified},
          {"max_fractional_distance", ap.max_fractional_distance}};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Arithmetic random waves: lattice arithmetic, almost periods, nodal geometry"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "base RNG seed");
  app.add_option("--threads", g.threads, "worker thread cap (0 = auto)");
  app.add_option("--out", g.out, "output file (default: stdout); ARW_OUT_DIR prefixes relative paths");
  app.add_option("--format", g.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  // ---- lattice ----------------------------------------------------------
  auto* lattice = app.add_subcommand("lattice", "frequency set of one energy level");
  std::int64_t lat_n = 0;
  bool lat_json = false, lat_csv = false;
  lattice->add_option("--n", lat_n, "energy index");
  lattice->add_flag("--json", lat_json, "force JSON output");
  lattice->add_flag("--csv", lat_csv, "force CSV output");
  auto* lat_scan = lattice->add_subcommand("scan", "admissible n with N_n >= log(n)^kappa");
  std::int64_t scan_limit = 0;
  double scan_kappa = 0.3;
  lat_scan->add_option("--limit", scan_limit, "upper bound for n")->required();
  lat_scan->add_option("--kappa", scan_kappa, "exponent in (0, log(2)/2)");

  // ---- covariance -------------------------------------------------------
  auto* cov = app.add_subcommand("covariance", "rescaled covariance against the Bessel limit");
  std::int64_t cov_n = 0;
  double cov_h = 0.01, cov_radius = 1.0;
  cov->add_option("--n", cov_n, "energy index")->required();
  cov->add_option("--grid", cov_h, "grid spacing");
  cov->add_option("--radius", cov_radius, "disk radius");

  // ---- almost-period ----------------------------------------------------
  auto* ap_cmd = app.add_subcommand("almost-period", "almost-period search for r~_n");
  std::int64_t ap_n = 0;
  int ap_m = 4;
  std::string ap_mode = "pigeonhole";
  double ap_eps = 0.25, ap_radius = 50.0, ap_step = 0.01, ap_cert_h = 0.02;
  ap_cmd->add_option("--n", ap_n, "energy index")->required();
  ap_cmd->add_option("--m", ap_m, "Dirichlet grid parameter");
  ap_cmd->add_option("--mode", ap_mode, "pigeonhole|scan|linearised")
      ->check(CLI::IsMember({"pigeonhole", "scan", "linearised"}));
  ap_cmd->add_option("--eps", ap_eps, "target epsilon (scan/linearised)");
  ap_cmd->add_option("--radius", ap_radius, "scan radius");
  ap_cmd->add_option("--step", ap_step, "scan grid spacing");
  ap_cmd->add_option("--cert-h", ap_cert_h, "grid spacing of the sup certificate");

  // ---- simulate ---------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "sample one wave and dump values on a grid");
  std::int64_t sim_n = 0;
  double sim_h = 0.01;
  std::string sim_window = "0,0,1,1";
  bool sim_rescaled = false;
  sim->add_option("--n", sim_n, "energy index")->required();
  sim->add_option("--grid", sim_h, "grid spacing");
  sim->add_option("--window", sim_window, "x0,y0,x1,y1 or disk:cx,cy,r");
  sim->add_flag("--rescaled", sim_rescaled, "sample the Planck-rescaled wave");

  // ---- optimality -------------------------------------------------------
  auto* opt = app.add_subcommand("optimality", "generic-direction almost-period Monte Carlo");
  int opt_d = 2, opt_trials = 50;
  double opt_a = 0.25, opt_eps = 0.2, opt_spacing = 1.0;
  std::string opt_range = "6..12:2";
  opt->add_option("--d", opt_d, "dimension (2)");
  opt->add_option("--a", opt_a, "window exponent");
  opt->add_option("--eps", opt_eps, "almost-period epsilon");
  opt->add_option("--N", opt_range, "mode counts, e.g. 6..12:2 or 6,8,10,12");
  opt->add_option("--trials", opt_trials, "trials per N");
  opt->add_option("--spacing-factor", opt_spacing, "grid spacing = factor/N");

  // ---- nodal ------------------------------------------------------------
  auto* nod = app.add_subcommand("nodal", "extract the nodal set of one sampled wave");
  std::int64_t nod_n = 0;
  double nod_h = 0.005;
  std::string nod_window = "0,0,1,1", nod_phi = "const";
  bool nod_rescaled = false;
  nod->set_help_flag("--help", "print help");  // frees -h for the spacing flag
  nod->add_option("--n", nod_n, "energy index")->required();
  nod->add_option("--h", nod_h, "grid spacing");
  nod->add_option("--window", nod_window, "x0,y0,x1,y1 or disk:cx,cy,r");
  nod->add_option("--phi", nod_phi, "const|coordx|bump");
  nod->add_flag("--rescaled", nod_rescaled, "use the Planck-rescaled wave");

  // ---- expected-length --------------------------------------------------
  auto* el = app.add_subcommand("expected-length", "Monte Carlo mean of full-torus nodal length");
  std::int64_t el_n = 0;
  int el_trials = 200;
  el->add_option("--n", el_n, "energy index")->required();
  el->add_option("--trials", el_trials, "Monte Carlo trials");

  // ---- correlation ------------------------------------------------------
  auto* corr = app.add_subcommand("correlation", "full-torus vs Planck-ball length correlation");
  std::int64_t corr_n = 0;
  int corr_trials = 300;
  double corr_eps = 0.4;
  corr->add_option("--n", corr_n, "energy index")->required();
  corr->add_option("--eps", corr_eps, "ball radius exponent offset");
  corr->add_option("--trials", corr_trials, "Monte Carlo trials");

  // ---- compare-models ---------------------------------------------------
  auto* cmp = app.add_subcommand("compare-models", "full vs linearised almost-period budgets");
  std::int64_t cmp_n = 0;
  double cmp_eps = 0.25, cmp_radius = 50.0, cmp_h = 0.01;
  cmp->add_option("--n", cmp_n, "energy index")->required();
  cmp->add_option("--eps", cmp_eps, "epsilon");
  cmp->add_option("--radius", cmp_radius, "scan radius");
  cmp->add_option("--step", cmp_h, "scan grid spacing");

  CLI11_PARSE(app, argc, argv);
  const auto started = std::chrono::steady_clock::now();

  if (lattice->parsed() && lat_scan->parsed()) {
    auto config = base_config("lattice scan", g);
    config["params"] = {{"limit", scan_limit}, {"kappa", scan_kappa}};
    if (scan_limit < 1) throw arw::ConfigInvalidError("lattice scan: limit must be positive");
    if (!(scan_kappa > 0 && scan_kappa < std::log(2.0) / 2.0))
      throw arw::ConfigInvalidError("lattice scan: kappa must lie in (0, log(2)/2)");
    const auto ns = arw::admissible_sequence(scan_limit, scan_kappa);
    std::ostringstream os;
    if (g.format == "csv") {
      arw::CsvWriter csv(os, {"n", "cardinality", "bound"});
      for (auto n : ns)
        csv.row({static_cast<double>(n), static_cast<double>(arw::cardinality_from_factorization(n)),
                 std::pow(std::log(static_cast<double>(n)), scan_kappa)});
    } else {
      os << json(ns).dump(2) << "\n";
    }
    deliver(g, config, os.str(), started);
    return 0;
  }

  if (lattice->parsed()) {
    if (lat_n < 1) throw arw::ConfigInvalidError("lattice: --n must be a positive integer");
    auto config = base_config("lattice", g);
    config["params"] = {{"n", lat_n}};
    const auto fs = arw::enumerate_lattice(lat_n);
    std::ostringstream os;
    const bool as_csv = lat_csv || (!lat_json && g.format == "csv");
    if (as_csv) {
      arw::CsvWriter csv(os, {"lambda1", "lambda2"});
      for (const auto& p : fs.points)
        csv.row({static_cast<double>(p.x), static_cast<double>(p.y)});
    } else {
      json j = {{"n", fs.n},
                {"cardinality", fs.cardinality},
                {"split_angles", fs.split_angles},
                {"base_angle", fs.base_angle},
                {"kolmogorov_distance", arw::kolmogorov_distance(arw::angular_measure(fs))}};
      j["omega"] = fs.omega.has_value() ? json(*fs.omega) : json(nullptr);
      auto pts = json::array();
      for (const auto& p : fs.points) pts.push_back({p.x, p.y});
      j["points"] = pts;
      os << j.dump(2) << "\n";
    }
    deliver(g, config, os.str(), started);
    return 0;
  }

  if (cov->parsed()) {
    if (cov_h <= 0 || cov_radius <= 0)
      throw arw::ConfigInvalidError("covariance: grid and radius must be positive");
    auto config = base_config("covariance", g);
    config["params"] = {{"n", cov_n}, {"grid", cov_h}, {"radius", cov_radius}};
    const auto kernel = arw::rescaled_kernel(arw::enumerate_lattice(cov_n));
    std::ostringstream os;
    arw::CsvWriter csv(os, {"t1", "t2", "r_rescaled", "bessel_j0", "difference"});
    const auto steps = static_cast<std::int64_t>(std::floor(cov_radius / cov_h));
    for (std::int64_t i = -steps; i <= steps; ++i) {
      for (std::int64_t j = -steps; j <= steps; ++j) {
        const double t[2] = {i * cov_h, j * cov_h};
        const double r = std::hypot(t[0], t[1]);
        if (r > cov_radius) continue;
        const double rv = arw::eval(kernel, t);
        const double bv = arw::bessel_j0(2.0 * std::numbers::pi * r);
        csv.row({t[0], t[1], rv, bv, rv - bv});
      }
    }
    deliver(g, config, os.str(), started);
    return 0;
  }

  if (ap_cmd->parsed()) {
    auto config = base_config("almost-period", g);
    config["params"] = {{"n", ap_n}, {"m", ap_m},         {"mode", ap_mode},
                        {"eps", ap_eps}, {"radius", ap_radius}, {"step", ap_step}};
    const auto fs = arw::enumerate_lattice(ap_n);
    json j = {{"n", ap_n}, {"mode", ap_mode}};
    if (ap_mode == "pigeonhole") {
      if (ap_m < 2) throw arw::ConfigInvalidError("almost-period: m must be >= 2");
      const auto kernel = arw::rescaled_kernel(fs);
      const auto ap = arw::almost_period_of_kernel(kernel, ap_m);
      j["result"] = almost_period_json(ap);
      j["analytic_bound"] = 2.0 * std::numbers::pi / ap_m;
      j["sharp_bound"] = arw::sup_difference_bound(kernel, ap.tau);
      const auto cert = arw::certified_sup_difference(kernel, ap.tau, 0.0, ap_cert_h, {}, g.threads);
      j["certificate"] = {{"grid_spacing", cert.grid_spacing},
                          {"grid_sup", cert.grid_sup},
                          {"lipschitz_bound", cert.lipschitz_bound},
                          {"certified_sup", cert.certified_sup}};
      j["norm_rescaled_threshold"] = 1.0;
      j["norm_unrescaled_threshold"] = 1.0 / std::sqrt(static_cast<double>(ap_n));
    } else if (ap_mode == "scan") {
      if (!(ap_eps > 0 && ap_eps < 1))
        throw arw::ConfigInvalidError("almost-period: eps must lie in (0,1)");
      const auto kernel = arw::rescaled_kernel(fs);
      if (auto ap = arw::smallest_almost_period_scan(kernel, ap_eps, ap_radius, ap_step))
        j["result"] = almost_period_json(*ap);
      else
        j["result"] = nullptr;
    } else {
      if (!(ap_eps > 0 && ap_eps < 1))
        throw arw::ConfigInvalidError("almost-period: eps must lie in (0,1)");
      const auto lk = arw::linearised_kernel(fs);
      const auto ap = arw::linearised_almost_period(lk, ap_eps);
      j["result"] = almost_period_json(ap);
      const auto omega = static_cast<double>(lk.base_angles.size());
      j["bound"] = omega == 0 ? 1.0
                              : std::pow(2.0 * std::numbers::pi * omega / ap_eps, omega);
    }
    deliver(g, config, j.dump(2) + "\n", started);
    return 0;
  }

  if (sim->parsed()) {
    if (sim_h <= 0) throw arw::ConfigInvalidError("simulate: grid must be positive");
    auto config = base_config("simulate", g);
    config["params"] = {{"n", sim_n}, {"grid", sim_h}, {"window", sim_window}, {"rescaled", sim_rescaled}};
    const auto fs = arw::enumerate_lattice(sim_n);
    const auto f = arw::sample_arw(fs, g.seed, sim_rescaled);
    const auto w = arw::Window::parse(sim_window);
    const auto [x0, y0, x1, y1] = w.bbox();
    std::ostringstream os;
    arw::CsvWriter csv(os, {"t1", "t2", "value"});
    const auto nx = static_cast<std::int64_t>(std::floor((x1 - x0) / sim_h));
    const auto ny = static_cast<std::int64_t>(std::floor((y1 - y0) / sim_h));
    for (std::int64_t j = 0; j <= ny; ++j)
      for (std::int64_t i = 0; i <= nx; ++i) {
        const double x = x0 + i * sim_h, y = y0 + j * sim_h;
        if (!w.contains(x, y)) continue;
        csv.row({x, y, f.eval(x, y)});
      }
    deliver(g, config, os.str(), started);
    return 0;
  }

  if (opt->parsed()) {
    auto config = base_config("optimality", g);
    config["params"] = {{"d", opt_d},           {"a", opt_a},
                        {"eps", opt_eps},       {"N", opt_range},
                        {"trials", opt_trials}, {"spacing_factor", opt_spacing}};
    const auto range = parse_int_range(opt_range);
    const auto rows = arw::optimality_experiment(opt_d, range, opt_a, opt_eps, opt_trials, g.seed,
                                                 opt_spacing, g.threads);
    std::ostringstream os;
    if (g.format == "csv") {
      arw::CsvWriter csv(os, {"N", "trials", "no_period_count", "probability"});
      for (const auto& r : rows)
        csv.row({static_cast<double>(r.n_modes), static_cast<double>(r.trials),
                 static_cast<double>(r.no_period_count), r.probability});
    } else {
      auto arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"N", r.n_modes},
                       {"trials", r.trials},
                       {"no_period_count", r.no_period_count},
                       {"probability", r.probability}});
      os << arr.dump(2) << "\n";
    }
    deliver(g, config, os.str(), started);
    return 0;
  }

  if (nod->parsed()) {
    if (nod_h <= 0) throw arw::ConfigInvalidError("nodal: h must be positive");
    auto config = base_config("nodal", g);
    config["params"] = {{"n", nod_n}, {"h", nod_h},     {"window", nod_window},
                        {"phi", nod_phi}, {"rescaled", nod_rescaled}};
    const auto fs = arw::enumerate_lattice(nod_n);
    const auto f = arw::sample_arw(fs, g.seed, nod_rescaled);
    const auto w = arw::Window::parse(nod_window);
    const auto phi = make_phi(nod_phi, w);
    const auto curves = arw::extract_nodal(f, w, nod_h);
    const auto obs = arw::observe_curves(
        curves, phi, [&f](double x, double y) { return f.gradient(x, y); });
    std::ostringstream os;
    if (g.format == "csv") {
      arw::CsvWriter csv(os, {"x1", "y1", "x2", "y2", "len"});
      for (const auto& s : curves.segments) csv.row({s.x1, s.y1, s.x2, s.y2, s.length()});
    } else {
      os << json{{"n", nod_n},
                 {"segments", curves.segments.size()},
                 {"length", obs.length},
                 {"weighted_integral", obs.weighted_integral},
                 {"phi", nod_phi},
                 {"regular_margin", obs.regular_margin},
                 {"boundary_fraction", obs.boundary_fraction}}
                .dump(2)
         << "\n";
    }
    deliver(g, config, os.str(), started);
    return 0;
  }

  if (el->parsed()) {
    if (el_trials < 1) throw arw::ConfigInvalidError("expected-length: trials must be >= 1");
    auto config = base_config("expected-length", g);
    config["params"] = {{"n", el_n}, {"trials", el_trials}};
    const auto rep = arw::expected_length_check(el_n, el_trials, g.seed, g.threads);
    std::ostringstream os;
    if (g.format == "csv") {
      arw::CsvWriter csv(os, {"trial", "length"});
      for (std::size_t i = 0; i < rep.lengths.size(); ++i)
        csv.row({static_cast<double>(i), rep.lengths[i]});
    } else {
      os << json{{"n", rep.n},
                 {"trials", rep.trials},
                 {"grid_h", rep.grid_h},
                 {"target", rep.target},
                 {"mean", rep.mean},
                 {"stddev", rep.stddev},
                 {"rel_error", rep.rel_error}}
                .dump(2)
         << "\n";
    }
    deliver(g, config, os.str(), started);
    return 0;
  }

  if (corr->parsed()) {
    auto config = base_config("correlation", g);
    config["params"] = {{"n", corr_n}, {"eps", corr_eps}, {"trials", corr_trials}};
    const auto rep = arw::correlation_experiment(corr_n, corr_eps, corr_trials, g.seed, g.threads);
    json j = {{"n", rep.n},
              {"eps", rep.eps},
              {"trials", rep.trials},
              {"ball_radius", rep.ball_radius},
              {"correlation", rep.correlation},
              {"ci", {rep.ci_lo, rep.ci_hi}},
              {"var_full", rep.var_full},
              {"var_reference", rep.var_reference}};
    deliver(g, config, j.dump(2) + "\n", started);
    return 0;
  }

  if (cmp->parsed()) {
    auto config = base_config("compare-models", g);
    config["params"] = {{"n", cmp_n}, {"eps", cmp_eps}, {"radius", cmp_radius}, {"step", cmp_h}};
    const auto c = arw::compare_models(cmp_n, cmp_eps, cmp_radius, cmp_h);
    std::ostringstream os;
    if (g.format == "csv") {
      arw::CsvWriter csv(os, {"model", "dof", "bound", "measured_smallest", "omega_valid"});
      for (const auto& r : c.rows)
        csv.raw_row({r.model, std::to_string(r.degrees_of_freedom), arw::format_double(r.bound),
                     r.measured_smallest ? arw::format_double(*r.measured_smallest) : "",
                     r.omega_valid ? "1" : "0"});
    } else {
      auto arr = json::array();
      for (const auto& r : c.rows) {
        json row = {{"model", r.model},
                    {"degrees_of_freedom", r.degrees_of_freedom},
                    {"bound", r.bound},
                    {"omega_valid", r.omega_valid}};
        row["measured_smallest"] =
            r.measured_smallest ? json(*r.measured_smallest) : json(nullptr);
        arr.push_back(row);
      }
      os << json{{"n", c.n}, {"epsilon", c.epsilon}, {"rows", arr}}.dump(2) << "\n";
    }
    deliver(g, config, os.str(), started);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const arw::ConfigInvalidError& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "ConfigInvalid"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"type", "ModuleError"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 3;
  }
}
