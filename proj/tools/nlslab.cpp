#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "nlslab/almost_conservation.hpp"
#include "nlslab/census.hpp"
#include "nlslab/config.hpp"
#include "nlslab/dynamics.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/field_io.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/random_data.hpp"
#include "nlslab/report.hpp"
#include "nlslab/scaling.hpp"
#include "nlslab/strichartz.hpp"

using namespace nlslab;

namespace {

struct Globals {
  std::string config_path;
  std::string out = "nlslab-out";
  std::uint64_t seed = 1;
  bool seed_set = false;
  int threads = 0;
};

TorusGeometry geometry_for(int d, double lambda, double gamma) {
  if (d == 1) return build_geometry(1, {}, lambda);
  if (d == 2) return build_geometry(2, {gamma}, lambda);
  throw ValidationError("d", "must be 1 or 2");
}

Thresholds read_thresholds(Config& c) {
  Thresholds th;
  th.gap = c.get_double("resonance.gap_factor", 4.0);
  th.dominance = c.get_double("resonance.dominance", 2.0);
  return th;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void run_simulate(Config& c, std::uint64_t seed, const std::string& out, RunRecord& rec) {
  const int d = c.get_int("sim.d", 1);
  const double lambda = c.get_double("sim.lambda", 1.0);
  const double gamma = c.get_double("sim.gamma", 1.0);
  const int K = c.get_int("sim.K", d == 1 ? 16 : 8);
  const std::string data = c.get_string("sim.data", "hs");
  const double s = c.get_double("sim.s", 0.4);
  const double m = c.get_double("sim.mass", kSmallMass);
  const int modes = c.get_int("sim.modes", 6);
  const double monitor_N = c.get_double("sim.monitor_N", 0.0);
  const int level = c.get_int("sim.monitor_level", 2);
  const bool checkpoint = c.get_bool("sim.checkpoint", false);
  const Thresholds th = read_thresholds(c);
  EvolutionConfig ec;
  ec.integrator = parse_integrator(c.get_string("sim.integrator", "rk4-galerkin"));
  ec.sign = parse_sign(c.get_string("sim.sign", "defocusing"));
  ec.dt = c.get_double("sim.dt", 0.0);
  ec.t_end = c.get_double("sim.t_end", 0.1);
  ec.sample_stride = c.get_int("sim.stride", 10);
  c.finish();

  const TorusGeometry g = geometry_for(d, lambda, gamma);
  const std::array<int, 2> KK{K, d == 2 ? K : 0};
  if (data == "hs") {
    ec.initial = random_hs(g, KK, s, m, seed);
  } else if (data == "modes") {
    ec.initial = random_modes(g, KK, modes, m, seed);
  } else {
    throw ValidationError("sim.data", "expected hs or modes, got '" + data + "'");
  }
  if (ec.dt <= 0.0) ec.dt = default_dt(K, lambda, std::max(monitor_N, 1.0));
  if (monitor_N > 0.0) {
    SymbolParams p;
    p.N = monitor_N;
    p.s = s;
    p.d = d;
    p.sign = to_int(ec.sign);
    p.thresholds = th;
    ec.monitor = p;
    ec.monitor_level = level;
  }
  rec.guards["dt"] = ec.dt;
  const Trajectory tr = evolve(ec);

  const bool colloc = ec.integrator == Integrator::Strang;
  std::ostringstream os;
  os.precision(17);
  os << "t,mass,energy,e_i1,correction,e_i2\n";
  double m0 = 0.0, mdrift = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const double mi = mass(tr.u[i]);
    if (i == 0) m0 = mi;
    mdrift = std::max(mdrift, std::abs(mi - m0));
    os << tr.t[i] << ',' << mi << ',' << energy(tr.u[i], ec.sign, colloc);
    if (i < tr.reports.size()) {
      os << ',' << tr.reports[i].e_i1 << ',' << tr.reports[i].correction << ',' << tr.reports[i].e_i2 << '\n';
    } else {
      os << ",,,\n";
    }
  }
  rec.tables.push_back({"trajectory", os.str()});
  rec.results["samples"] = tr.t.size();
  rec.results["t_reached"] = tr.t.back();
  rec.results["mass_drift"] = mdrift;
  rec.guards["aborted"] = tr.aborted;
  if (tr.aborted) rec.notes.push_back(tr.diagnostics);
  rec.checks.push_back({"finite trajectory", !tr.aborted, false, tr.diagnostics});
  if (colloc)
    rec.checks.push_back({"strang mass conservation", mdrift <= 1e-12 * std::max(m0, 1e-300), false,
                          "max drift " + fmt(mdrift)});
  if (checkpoint) {
    std::filesystem::create_directories(out);
    write_field((std::filesystem::path(out) / "final.nlsf").string(), tr.u.back());
    rec.results["checkpoint"] = "final.nlsf";
  }
}

void run_energy_track(Config& c, std::uint64_t seed, const std::string&, RunRecord& rec) {
  AlmostConservationConfig a;
  a.d = c.get_int("energy.d", 1);
  a.lambda = c.get_double("energy.lambda", 1.0);
  a.K = c.get_int("energy.K", 0);
  a.s = c.get_double("energy.s", 0.4);
  a.mass = c.get_double("energy.mass", kSmallMass);
  a.N = c.get_doubles("energy.N", {4, 8, 16});
  a.t_end = c.get_double("energy.t_end", 0.25);
  a.dt = c.get_double("energy.dt", 0.0);
  a.samples = c.get_int("energy.samples", 50);
  a.max_steps = c.get_int("energy.max_steps", 200000);
  a.integrator = parse_integrator(c.get_string("energy.integrator", "rk4-galerkin"));
  a.sign = parse_sign(c.get_string("energy.sign", "defocusing"));
  a.thresholds = read_thresholds(c);
  a.seed = seed;
  c.finish();
  const GrowthTable t = run_almost_conservation(a);
  rec.tables.push_back({"growth", t.csv()});
  rec.results = t.to_json();
  bool capped = false;
  for (const auto& r : t.rows) capped = capped || r.capped;
  rec.guards["horizon_capped"] = capped;
  rec.checks.push_back({"E_I2 increment decreasing in N", t.monotone_e2, false, ""});
  rec.checks.push_back({"E_I2 increment below E_I1 increment at the largest N", t.e2_below_e1, false, ""});
}

void run_strichartz(Config& c, std::uint64_t seed, const std::string&, RunRecord& rec) {
  StrichartzConfig sc;
  sc.lambda = c.get_double("strichartz.lambda", 64.0);
  sc.N = c.get_double("strichartz.N", 256.0);
  std::vector<int> M;
  for (double x : c.get_doubles("strichartz.M", {4, 8, 16, 32})) M.push_back(static_cast<int>(x));
  sc.M = M;
  sc.samples = c.get_int("strichartz.samples", 200);
  sc.lambda_2d = c.get_double("strichartz.lambda_2d", 2.0);
  M.clear();
  for (double x : c.get_doubles("strichartz.M_2d", {2, 4})) M.push_back(static_cast<int>(x));
  sc.M_2d = M;
  sc.samples_2d = c.get_int("strichartz.samples_2d", 8);
  sc.seed = seed;
  c.finish();
  const StrichartzReport r = run_strichartz_probe(sc);
  rec.tables.push_back({"strichartz", r.csv()});
  rec.tables.push_back({"calibration", r.calibration_csv()});
  rec.results = r.to_json();
  double worst = 0.0;
  for (const auto& row : r.calibration) worst = std::max(worst, row.rel_error());
  rec.checks.push_back({"calibration rows exact", worst <= 1e-10, true, "max relative error " + fmt(worst)});
  if (!r.fitted) rec.notes.push_back("degenerate M grid: no slope fitted");
}

std::string prefixed(const std::string& csv, const std::string& cols, const std::string& vals, bool header) {
  std::istringstream in(csv);
  std::string line, out;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      if (header) out += cols + "," + line + "\n";
      first = false;
      continue;
    }
    out += vals + "," + line + "\n";
  }
  return out;
}

void run_census(Config& c, std::uint64_t, const std::string&, RunRecord& rec) {
  CensusOptions o;
  o.d = c.get_int("census.d", 1);
  const auto Ns = c.get_doubles("census.N", {4});
  o.Kmax = c.get_int("census.Kmax", 8);
  o.s = c.get_double("census.s", 0.5);
  o.gaps = c.get_doubles("census.gaps", {c.get_double("resonance.gap_factor", 4.0)});
  o.dominance = c.get_double("resonance.dominance", 2.0);
  o.guard = c.get_double("census.guard", 1e9);
  c.finish();
  std::string csv, sohinger = "N,K,tuple,omega,verdict,passed\n";
  nlohmann::json per_n = nlohmann::json::array();
  double violations = 0.0;
  std::string witness;
  bool partition = true, soh = true;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    o.N = Ns[i];
    const CensusReport r = resonance_census(o);
    csv += prefixed(r.csv(), "N,Kmax", fmt(o.N) + "," + std::to_string(o.Kmax), i == 0);
    for (const auto& sc : r.sohinger) {
      sohinger += fmt(o.N) + "," + std::to_string(sc.K) + ",\"" + sc.tuple + "\"," + fmt(sc.omega) + "," + sc.verdict +
                  "," + (sc.passed ? "1" : "0") + "\n";
      soh = soh && sc.passed;
    }
    per_n.push_back(r.to_json());
    violations += r.violations;
    if (witness.empty()) witness = r.violation_witness;
    partition = partition && r.partition_ok();
  }
  rec.tables.push_back({"census", csv});
  rec.tables.push_back({"sohinger", sohinger});
  rec.results["runs"] = per_n;
  rec.checks.push_back({"partition totality", partition, true, ""});
  rec.checks.push_back({"non-resonant lower bounds", violations == 0.0, true,
                        violations == 0.0 ? "" : fmt(violations) + " violations, witness " + witness});
  rec.checks.push_back({"Sohinger family resonant", soh, true, ""});
}

void run_verify(Config& c, std::uint64_t, const std::string&, RunRecord& rec) {
  const auto names = c.get_strings("verify.regions", {"i", "ii", "iii", "iv", "sigma6"});
  const auto Ns = c.get_doubles("verify.N", {4, 8});
  VerifyOptions o;
  o.Kmax = c.get_int("verify.Kmax", 0);
  o.s = c.get_double("verify.s", 0.5);
  o.gaps = c.get_doubles("verify.gaps", {3, 4, 6});
  o.dominance = c.get_double("resonance.dominance", 2.0);
  o.guard = c.get_double("verify.guard", 1e9);
  c.finish();
  std::vector<BoundRegion> regions;
  for (const auto& n : names) regions.push_back(parse_region(n));
  std::vector<VerifyRow> rows;
  for (double N : Ns) {
    o.N = N;
    const auto r = verify_multiplier_bounds(regions, o);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const auto st = stability_table(rows);
  rec.tables.push_back({"verify", verify_csv(rows)});
  rec.tables.push_back({"stability", stability_csv(st)});
  for (const auto& s : st) {
    rec.checks.push_back({std::string("finite sup ratio: ") + region_name(s.region), s.finite, true, ""});
    rec.checks.push_back({std::string("stable sup ratio: ") + region_name(s.region), s.stable, false,
                          "spread " + fmt(s.spread) + (s.growth ? ", growth" : "")});
  }
}

void run_budget(Config& c, std::uint64_t, const std::string&, RunRecord& rec) {
  const auto ds = c.get_doubles("budget.d", {1, 2});
  const double smin = c.get_double("budget.s_min", 0.05);
  const double smax = c.get_double("budget.s_max", 0.95);
  const int steps = c.get_int("budget.s_steps", 19);
  const auto Ns = c.get_doubles("budget.N", {16, 64, 256});
  BudgetOptions bo;
  bo.epsilon = c.get_double("budget.epsilon", 0.01);
  bo.delta = c.get_double("budget.delta", 0.1);
  bo.slack = c.get_double("budget.slack", 0.0);
  c.finish();
  if (steps < 1) throw ValidationError("budget.s_steps", "must be >= 1");
  std::ostringstream sweep, plans;
  sweep.precision(17);
  plans.precision(17);
  sweep << "d,s,total_existence_exponent,effective_existence_exponent,lambda_exponent,step_count_exponent,"
           "global_iterable\n";
  plans << "d,s,N,lambda,per_step_time,step_count,rescaled_horizon,total_time\n";
  nlohmann::json crossings = nlohmann::json::object();
  bool monotone = true;
  for (double dd : ds) {
    const int d = static_cast<int>(dd);
    double prev = -INFINITY;
    for (int i = 0; i < steps; ++i) {
      const double s = steps == 1 ? smin : smin + (smax - smin) * i / (steps - 1);
      const ScalingPlan p = gwp_budget(d, s, Ns.front(), bo);
      sweep << d << ',' << s << ',' << p.total_existence_exponent << ',' << p.effective_existence_exponent << ','
            << p.lambda_exponent << ',' << p.step_count_exponent << ',' << (p.global_iterable ? 1 : 0) << '\n';
      monotone = monotone && p.total_existence_exponent > prev;
      prev = p.total_existence_exponent;
      for (double N : Ns) {
        const ScalingPlan q = gwp_budget(d, s, N, bo);
        plans << d << ',' << s << ',' << N << ',' << q.lambda << ',' << q.per_step_time << ',' << q.step_count << ','
              << q.rescaled_horizon << ',' << q.total_time << '\n';
      }
    }
    crossings[std::to_string(d) + "d"] = existence_zero_crossing(d);
  }
  rec.tables.push_back({"budget", sweep.str()});
  rec.tables.push_back({"plans", plans.str()});
  rec.results["zero_crossings"] = crossings;
  rec.checks.push_back({"existence exponent increasing in s", monotone, false, ""});
}

using Runner = void (*)(Config&, std::uint64_t, const std::string&, RunRecord&);

int dispatch(const std::string& name, Runner run, const Globals& g) {
  Config c = g.config_path.empty() ? Config{} : Config::load(g.config_path);
  RunRecord rec;
  rec.command = name;
  std::uint64_t seed = c.get_u64("seed", 1);
  if (g.seed_set) seed = g.seed;
  int threads = c.get_int("threads", 0);
  if (g.threads > 0) threads = g.threads;
  if (threads > 0) set_thread_count(threads);
  std::string out = c.get_string("output_dir", g.out);
  if (g.out != "nlslab-out") out = g.out;
  out = resolve_output_dir(out);
  rec.seeds.push_back(seed);
  run(c, seed, out, rec);
  rec.config = c.echo();
  rec.config["seed"] = seed;
  rec.config["threads"] = thread_count();
  rec.config["output_dir"] = out;
  const int code = emit_report(rec, out);
  std::cout << rec.summary();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: experiments for the mass-critical NLS on tori"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "key = value or JSON configuration file");
  app.add_option("--out", g.out, "output directory (NLSLAB_OUT overrides)");
  app.add_option_function<std::uint64_t>(
      "--seed",
      [&](const std::uint64_t& s) {
        g.seed = s;
        g.seed_set = true;
      },
      "random seed");
  app.add_option("--threads", g.threads, "worker threads");

  const std::vector<std::pair<std::string, Runner>> cmds{
      {"simulate", run_simulate}, {"energy-track", run_energy_track}, {"strichartz", run_strichartz},
      {"census", run_census},     {"verify", run_verify},             {"budget", run_budget}};
  const std::vector<std::string> help{"evolve the truncated NLS and record energies",
                                      "almost-conservation growth table",
                                      "bilinear and linear Strichartz probes",
                                      "resonance census of Gamma_n",
                                      "multiplier size bounds",
                                      "global well-posedness budget"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < cmds.size(); ++i) subs.push_back(app.add_subcommand(cmds[i].first, help[i]));
  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t i = 0; i < cmds.size(); ++i)
      if (subs[i]->parsed()) return dispatch(cmds[i].first, cmds[i].second, g);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
