#include "conecheck/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "conecheck/core/config.hpp"
#include "conecheck/core/errors.hpp"
#include "conecheck/criterion/criterion.hpp"
#include "conecheck/probes/experiment.hpp"
#include "conecheck/probes/ode_check.hpp"
#include "conecheck/probes/probe.hpp"
#include "conecheck/stepper/stepper.hpp"

namespace conecheck::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Thrown for problems with the command line or the config file (exit 4).
struct UsageError : Error {
  using Error::Error;
};

struct Common {
  std::string out = "out";
  std::uint64_t seed = 0;
  bool json = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "output directory")->capture_default_str();
  app->add_option("--seed", c.seed, "seed for all sampling")->capture_default_str();
  app->add_flag("--json", c.json, "machine-readable stdout");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Config read_config(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  try {
    return load_config(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const DimensionError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const PositivityError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  f << text;
}

fs::path prepare_out(const Common& c) {
  fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const std::vector<std::string>& args,
                    const Common& c, const std::optional<Config>& config, const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "conecheck";
  m["version"] = kVersion;
  m["command"] = command;
  m["args"] = args;
  m["seed"] = c.seed;
  m["config"] = config ? json::parse(serialize_config(*config)) : json(nullptr);
  m["outputs"] = outputs;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

// ---- audit

struct AuditOpts {
  std::string config;
  double tol = 0.0;
  std::size_t samples = 256;
};

int do_audit(const AuditOpts& o, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  const Config cfg = read_config(o.config);
  criterion::SignSampler sampler;
  sampler.seed = c.seed;
  sampler.samples_per_component = o.samples;
  const AuditReport report = criterion::audit(cfg.system, sampler, o.tol);

  const fs::path dir = prepare_out(c);
  const std::string doc = to_json(report);
  write_file(dir / "audit.json", doc + "\n");
  write_manifest(dir, "audit", args, c, cfg, {"audit.json"});

  const int code = !report.overall() ? kFail : report.has_warnings() ? kWarnings : kPass;
  if (c.json) {
    out << doc << "\n";
  } else {
    const char* verdict = code == kPass ? "PASS" : code == kFail ? "FAIL" : "PASS with warnings";
    out << "audit " << o.config << ": " << verdict << " (" << report.violations.size() << " violations, "
        << report.warnings.size() + report.indeterminate.size() << " warnings, " << report.reaction_samples
        << " reaction samples)\n";
  }
  return code;
}

// ---- simulate

struct SimulateOpts {
  std::string config;
  std::optional<std::size_t> n;
  std::optional<double> box;
  std::optional<double> dt;
  double t_end = 1.0;
  std::size_t stride = 10;
  bool no_dealias = false;
};

std::string simulate_plot(std::size_t ncomp) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 't'\n"
     << "set ylabel 'min u_k'\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output 'timeseries.png'\n"
     << "plot ";
  for (std::size_t k = 1; k <= ncomp; ++k) {
    if (k > 1) gp << ", \\\n     ";
    gp << "'timeseries.csv' using ($2==" << k << "?$1:1/0):3 with lines title 'u_" << k << "'";
  }
  gp << "\n";
  return gp.str();
}

int do_simulate(const SimulateOpts& o, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  Config cfg = read_config(o.config);
  if (o.n) cfg.grid.n = *o.n;
  if (o.box) cfg.grid.box = *o.box;
  const Grid grid = make_grid(cfg.system, cfg.grid);
  const Field u0 = make_initial_field(cfg.system, grid, cfg.initial);

  stepper::RunConfig rc;
  rc.t_end = o.t_end;
  rc.dt = o.dt.value_or(o.t_end / 1000.0);
  rc.output_stride = o.stride;
  if (o.no_dealias) rc.dealias = false;
  const stepper::TimeSeries ts = stepper::run(cfg.system, u0, rc);

  const fs::path dir = prepare_out(c);
  {
    std::ofstream f(dir / "timeseries.csv", std::ios::binary);
    stepper::write_csv(f, ts);
  }
  {
    std::ofstream f(dir / "final_state.json", std::ios::binary);
    stepper::write_state(f, ts.final_state, ts.final_time, ts.final_step, ts.blew_up);
  }
  write_file(dir / "timeseries.gp", simulate_plot(cfg.system.ncomp()));
  write_manifest(dir, "simulate", args, c, cfg, {"timeseries.csv", "final_state.json", "timeseries.gp"});

  double overall_min = INFINITY;
  for (const auto& s : ts.snapshots)
    for (const auto& d : s.components) overall_min = std::min(overall_min, d.min);
  if (c.json) {
    json j{{"steps", ts.final_step},
           {"t", ts.final_time},
           {"blew_up", ts.blew_up},
           {"blowup_reason", ts.blowup_reason},
           {"min", overall_min}};
    out << j.dump(2) << "\n";
  } else {
    out << "simulate " << o.config << ": " << ts.final_step << " steps to t=" << fmt(ts.final_time)
        << ", min over run " << fmt(overall_min) << (ts.blew_up ? ", BLOW-UP: " + ts.blowup_reason : "") << "\n";
  }
  return ts.blew_up ? kRuntime : kPass;
}

// ---- probe

struct ProbeOpts {
  std::string kind = "diffusion";
  int d = 1;
  std::vector<double> eps{1.0};
  std::size_t n = 64;
  std::optional<double> box;
  int axis = 1;
  int sign = 1;
  bool refine = false;
};

int do_probe(const ProbeOpts& o, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  if (o.axis < 1 || o.axis > o.d) throw UsageError("--axis must be between 1 and --d");
  const double eps_min = *std::min_element(o.eps.begin(), o.eps.end());
  if (!(eps_min > 0.0)) throw UsageError("--eps values must be positive");
  const probes::Mollifier mollifier;
  const Grid grid = o.box ? Grid(o.d, o.n, *o.box) : probes::probe_grid(o.d, o.n, eps_min, mollifier);
  const bool diffusion = o.kind == "diffusion";

  json doc;
  doc["kind"] = o.kind;
  doc["d"] = o.d;
  doc["n"] = grid.n();
  doc["box"] = grid.box();
  doc["results"] = json::array();
  std::ostringstream line;
  line << "probe " << o.kind << " d=" << o.d << " n=" << grid.n() << ":";
  std::ostringstream csv;
  csv << "x,u\n";
  for (std::size_t e = 0; e < o.eps.size(); ++e) {
    const double eps = o.eps[e];
    probes::ProbeFamily fam{diffusion ? probes::ProbeKind::Diffusion : probes::ProbeKind::Transport, o.axis - 1,
                            o.sign, eps, mollifier};
    const Field u = probes::build_probe(grid, fam);
    double value, expected;
    if (diffusion) {
      value = probes::laplacian_cubed_at_origin(u);
      expected = -std::pow(o.d, 3) / std::pow(eps, 6);
    } else {
      value = probes::derivative_at_origin(u, o.axis - 1);
      expected = -o.sign / eps;
    }
    doc["results"].push_back({{"eps", eps},
                              {"value_at_origin", u.at(0, grid.origin_index())},
                              {diffusion ? "lap3_at_origin" : "derivative_at_origin", value},
                              {"expected", expected},
                              {"relative_error", std::abs(value - expected) / std::abs(expected)}});
    line << (e ? ";" : "") << " eps=" << fmt(eps) << " " << (diffusion ? "lap3" : "d/dx" + std::to_string(o.axis))
         << " at origin = " << fmt(value) << " (expected " << fmt(expected) << ")";
    if (e == 0) {
      // line through the origin along the first axis
      std::array<std::size_t, Grid::kMaxDim> idx{};
      for (int a = 0; a < o.d; ++a) idx[a] = grid.n() / 2;
      for (std::size_t i = 0; i < grid.n(); ++i) {
        idx[0] = i;
        csv << fmt(grid.coordinate(i)) << "," << fmt(u.at(0, grid.flatten(idx))) << "\n";
      }
    }
  }
  if (o.refine) {
    if (!diffusion) throw UsageError("--refine applies to the diffusion probe");
    doc["refinement"] = json::array();
    for (const auto& l : probes::diffusion_refinement_study(o.d, o.n, mollifier))
      doc["refinement"].push_back({{"width", l.width},
                                   {"points_per_width", l.points_per_width},
                                   {"lap3_at_origin", l.value},
                                   {"relative_error", l.relative_error}});
  }

  const fs::path dir = prepare_out(c);
  write_file(dir / "probe.json", doc.dump(2) + "\n");
  write_file(dir / "probe.csv", csv.str());
  write_manifest(dir, "probe", args, c, std::nullopt, {"probe.json", "probe.csv"});
  if (c.json)
    out << doc.dump(2) << "\n";
  else
    out << line.str() << "\n";
  return kPass;
}

// ---- counterexample

struct CounterOpts {
  std::string kind = "diffusion";
  std::size_t k = 1;
  std::size_t j = 2;
  double a = 1.0;
  double gamma = 1.0;
  int axis = 1;
  int d = 1;
  std::vector<double> eps{1.0, 0.5, 0.25};
  std::optional<std::size_t> n;
  std::optional<double> box;
  std::optional<double> t_probe;
  std::string config;
};

int do_counterexample(const CounterOpts& o, const Common& c, const std::vector<std::string>& args,
                      std::ostream& out) {
  if (o.k < 1 || o.j < 1) throw UsageError("--k and --j are 1-based");
  if (o.axis < 1 || o.axis > o.d) throw UsageError("--axis must be between 1 and --d");
  if (o.d < 1 || o.d > Grid::kMaxDim) throw UsageError("--d must be 1, 2 or 3");
  std::optional<Config> cfg;
  probes::ViolationKind kind;
  if (o.kind == "diffusion") {
    kind = probes::DiffusionViolation{o.k - 1, o.j - 1, o.a};
  } else if (o.kind == "transport") {
    kind = probes::TransportViolation{o.k - 1, o.j - 1, o.axis - 1, o.gamma};
  } else {
    probes::ReactionViolation rv{o.k - 1, 2, ReactionSpec::linear(MatrixN{{0.0, 1.0}, {0.0, 0.0}})};
    if (!o.config.empty()) {
      cfg = read_config(o.config);
      rv.ncomp = cfg->system.ncomp();
      rv.reaction = cfg->system.reaction();
    }
    kind = rv;
  }

  for (double e : o.eps)
    if (!(e > 0.0)) throw UsageError("--eps values must be positive");
  const probes::Mollifier mollifier;
  Grid grid = probes::experiment_grid(o.d, o.eps, mollifier);
  if (o.n || o.box) {
    const std::size_t n = o.n.value_or(grid.n());
    const double box = o.box.value_or(static_cast<double>(n) * grid.spacing());
    grid = Grid(o.d, n, box);
  }
  const probes::ViolationReport report = probes::run_violation_experiment(kind, o.eps, grid, o.t_probe, mollifier);

  const fs::path dir = prepare_out(c);
  const std::string doc = probes::to_json(report);
  write_file(dir / "violation.json", doc + "\n");
  std::ostringstream csv;
  csv << "eps,initial_rate_at_origin,min_after_t_probe\n";
  char buf[128];
  for (std::size_t i = 0; i < report.eps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", report.eps[i], report.initial_rate_at_origin[i],
                  report.min_after_t_probe[i]);
    csv << buf;
  }
  write_file(dir / "violation.csv", csv.str());
  write_file(dir / "violation.gp",
             "set datafile separator ','\n"
             "set key autotitle columnhead\n"
             "set logscale xy\n"
             "set xlabel 'eps'\n"
             "set ylabel '|initial rate at origin|'\n"
             "set terminal pngcairo size 900,600\n"
             "set output 'violation.png'\n"
             "plot 'violation.csv' using 1:(abs($2)) with linespoints title 'rate'\n");
  write_manifest(dir, "counterexample", args, c, cfg, {"violation.json", "violation.csv", "violation.gp"});

  if (c.json) {
    out << doc << "\n";
  } else {
    out << "counterexample " << report.kind << ": slope " << fmt(report.fitted_slope) << ", negativity "
        << (report.negativity_observed ? "observed" : "NOT observed");
    if (report.negativity_threshold_eps) out << " up to eps=" << fmt(*report.negativity_threshold_eps);
    if (!report.dropped.empty()) out << ", " << report.dropped.size() << " eps dropped";
    out << "\n";
  }
  return report.negativity_observed ? kPass : kFail;
}

// ---- ode-check

struct OdeOpts {
  std::string config;
  std::vector<double> u0;
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t stride = 10;
  double tol = 1e-8;
};

int do_ode_check(const OdeOpts& o, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  const Config cfg = read_config(o.config);
  const std::size_t n = cfg.system.ncomp();
  std::vector<double> u0 = o.u0;
  if (u0.empty()) u0 = cfg.initial.amplitude.empty() ? std::vector<double>(n, 1.0) : cfg.initial.amplitude;
  if (u0.size() != n) throw UsageError("--u0 needs one value per component");
  const probes::OdeComparison cmp = probes::ode_reduction_check(cfg.system, u0, o.t_end, o.dt, o.stride);

  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json doc{{"max_deviation", cmp.max_deviation},
           {"tolerance", o.tol},
           {"first_negative_pde", opt(cmp.first_negative_pde)},
           {"first_negative_ode", opt(cmp.first_negative_ode)},
           {"stride_time", cmp.stride_time},
           {"pde_blew_up", cmp.pde_blew_up},
           {"ode_blew_up", cmp.ode_blew_up}};
  bool times_agree = cmp.first_negative_pde.has_value() == cmp.first_negative_ode.has_value();
  if (times_agree && cmp.first_negative_pde)
    times_agree = std::abs(*cmp.first_negative_pde - *cmp.first_negative_ode) <= cmp.stride_time * (1 + 1e-9);
  const bool ok = cmp.max_deviation <= o.tol && times_agree && cmp.pde_blew_up == cmp.ode_blew_up;
  doc["agree"] = ok;

  const fs::path dir = prepare_out(c);
  write_file(dir / "ode_check.json", doc.dump(2) + "\n");
  std::ostringstream csv;
  csv << "t,component,pde,ode\n";
  char buf[128];
  for (std::size_t s = 0; s < cmp.times.size(); ++s)
    for (std::size_t k = 0; k < n; ++k) {
      const double ode = k < cmp.ode_values[s].size() ? cmp.ode_values[s][k] : NAN;
      std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g\n", cmp.times[s], k + 1, cmp.pde_values[s][k], ode);
      csv << buf;
    }
  write_file(dir / "ode_check.csv", csv.str());
  write_file(dir / "ode_check.gp",
             "set datafile separator ','\n"
             "set key autotitle columnhead\n"
             "set xlabel 't'\n"
             "set terminal pngcairo size 900,600\n"
             "set output 'ode_check.png'\n"
             "plot 'ode_check.csv' using ($2==1?$1:1/0):3 with lines title 'PDE u_1', \\\n"
             "     'ode_check.csv' using ($2==1?$1:1/0):4 with points title 'ODE u_1'\n");
  write_manifest(dir, "ode-check", args, c, cfg, {"ode_check.json", "ode_check.csv", "ode_check.gp"});

  if (c.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << "ode-check " << o.config << ": max deviation " << fmt(cmp.max_deviation) << ", first negativity PDE "
        << (cmp.first_negative_pde ? fmt(*cmp.first_negative_pde) : "none") << " / ODE "
        << (cmp.first_negative_ode ? fmt(*cmp.first_negative_ode) : "none") << (ok ? ", agree" : ", DISAGREE")
        << "\n";
  }
  return ok ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audit reaction-diffusion-transport systems with cubed-Laplacian diffusion for nonnegativity"};
  app.name("conecheck");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  Common common;

  AuditOpts audit_o;
  auto* audit = app.add_subcommand("audit", "check a system against the necessary conditions");
  audit->add_option("config", audit_o.config, "system config file")->required();
  audit->add_option("--tol", audit_o.tol, "off-diagonal tolerance for the diagonality checks")->capture_default_str();
  audit->add_option("--samples", audit_o.samples, "random reaction samples per component and scale")
      ->capture_default_str();
  add_common(audit, common);

  SimulateOpts sim_o;
  auto* sim = app.add_subcommand("simulate", "run the pseudo-spectral solver");
  sim->add_option("config", sim_o.config, "system config file")->required();
  sim->add_option("--n", sim_o.n, "grid points per axis");
  sim->add_option("--box", sim_o.box, "periodic box length");
  sim->add_option("--dt", sim_o.dt, "time step (default t-end/1000)");
  sim->add_option("--t-end", sim_o.t_end, "final time")->capture_default_str();
  sim->add_option("--stride", sim_o.stride, "steps between CSV rows")->capture_default_str();
  sim->add_flag("--no-dealias", sim_o.no_dealias, "disable 2/3-rule dealiasing of the reaction");
  add_common(sim, common);

  ProbeOpts probe_o;
  auto* probe = app.add_subcommand("probe", "build a probe and evaluate its derivative at the origin");
  probe->add_option("--kind", probe_o.kind, "diffusion or transport")
      ->check(CLI::IsMember({"diffusion", "transport"}))
      ->capture_default_str();
  probe->add_option("--d", probe_o.d, "space dimension")->check(CLI::Range(1, 3))->capture_default_str();
  probe->add_option("--eps", probe_o.eps, "scale parameters")->delimiter(',');
  probe->add_option("--n", probe_o.n, "grid points per axis")->capture_default_str();
  probe->add_option("--box", probe_o.box, "periodic box length (default fits the probe)");
  probe->add_option("--axis", probe_o.axis, "transport axis, 1-based")->capture_default_str();
  probe->add_option("--sign", probe_o.sign, "transport sign")->check(CLI::IsMember({-1, 1}))->capture_default_str();
  probe->add_flag("--refine", probe_o.refine, "also run the width refinement study");
  add_common(probe, common);

  CounterOpts ce_o;
  auto* ce = app.add_subcommand("counterexample", "run a scaled-probe violation experiment");
  ce->add_option("--kind", ce_o.kind, "diffusion, transport or reaction")
      ->check(CLI::IsMember({"diffusion", "transport", "reaction"}))
      ->capture_default_str();
  ce->add_option("--k", ce_o.k, "pinned component, 1-based")->capture_default_str();
  ce->add_option("--j", ce_o.j, "probed component, 1-based")->capture_default_str();
  ce->add_option("--a", ce_o.a, "off-diagonal diffusion entry a_kj")->capture_default_str();
  ce->add_option("--gamma", ce_o.gamma, "off-diagonal transport entry")->capture_default_str();
  ce->add_option("--axis", ce_o.axis, "transport axis, 1-based")->capture_default_str();
  ce->add_option("--d", ce_o.d, "space dimension")->capture_default_str();
  ce->add_option("--eps", ce_o.eps, "scale parameters")->delimiter(',');
  ce->add_option("--n", ce_o.n, "grid points per axis");
  ce->add_option("--box", ce_o.box, "periodic box length");
  ce->add_option("--t-probe", ce_o.t_probe, "evolution time");
  ce->add_option("--config", ce_o.config, "reaction kind: take F from this config");
  add_common(ce, common);

  OdeOpts ode_o;
  auto* ode = app.add_subcommand("ode-check", "compare constant-state PDE runs with u' = -F(u)");
  ode->add_option("config", ode_o.config, "system config file")->required();
  ode->add_option("--u0", ode_o.u0, "constant state, one value per component")->delimiter(',');
  ode->add_option("--dt", ode_o.dt, "time step")->capture_default_str();
  ode->add_option("--t-end", ode_o.t_end, "final time")->capture_default_str();
  ode->add_option("--stride", ode_o.stride, "steps between comparisons")->capture_default_str();
  ode->add_option("--tol", ode_o.tol, "deviation tolerance")->capture_default_str();
  add_common(ode, common);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (audit->parsed()) return do_audit(audit_o, common, args, out);
    if (sim->parsed()) return do_simulate(sim_o, common, args, out);
    if (probe->parsed()) return do_probe(probe_o, common, args, out);
    if (ce->parsed()) return do_counterexample(ce_o, common, args, out);
    return do_ode_check(ode_o, common, args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace conecheck::cli
