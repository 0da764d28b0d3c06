#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ensemble_su2/analysis.hpp"
#include "ensemble_su2/io.hpp"
#include "ensemble_su2/version.hpp"

namespace es = ensemble_su2;
using nlohmann::json;

namespace {

int env_workers() {
  const char* s = std::getenv("ENSEMBLE_SU2_THREADS");
  if (!s || !*s) return 0;  // auto
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096)
    throw std::invalid_argument("ENSEMBLE_SU2_THREADS must be a non-negative integer");
  return static_cast<int>(v);
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": bad number '" + tok + "'");
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (out.empty()) throw std::invalid_argument(flag + ": empty list");
  return out;
}

std::vector<double> parse_grid_spec(const std::string& text) {
  // lo:hi:n, n evenly spaced points including both endpoints
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("--omega-grid: expected lo:hi:n");
  const double lo = std::stod(text.substr(0, c1));
  const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const int n = std::stoi(text.substr(c2 + 1));
  if (n < 1 || hi < lo) throw std::invalid_argument("--omega-grid: expected lo:hi:n with hi >= lo, n >= 1");
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0));
  return out;
}

std::vector<double> resolve_omegas(const std::string& omega_list, const std::string& grid_spec,
                                   const std::vector<double>& fallback) {
  if (!omega_list.empty() && !grid_spec.empty())
    throw std::invalid_argument("give either --omega or --omega-grid, not both");
  if (!omega_list.empty()) return parse_double_list(omega_list, "--omega");
  if (!grid_spec.empty()) return parse_grid_spec(grid_spec);
  if (fallback.empty()) throw std::invalid_argument("one of --omega / --omega-grid is required");
  return fallback;
}

std::string plot_stem(const std::string& out_path) {
  const std::filesystem::path p(out_path);
  std::filesystem::path stem = p;
  stem.replace_extension();
  return stem.string();
}

struct timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int run_synthesize(const std::string& profile_path, double eps1, int n_pairs,
                   const std::string& axis, const std::string& out) {
  timer t;
  const es::target_profile profile = es::profile_from_file(profile_path);
  const es::control_schedule sched = es::build_theorem1(
      profile, eps1, n_pairs, axis == "y" ? es::target_axis::y : es::target_axis::x);
  es::write_text_file(out, es::schedule_to_json(sched));
  es::write_manifest(out, "synthesize",
                     {{"profile", profile_path},
                      {"eps1", es::format_double(eps1)},
                      {"N", std::to_string(n_pairs)},
                      {"axis", axis},
                      {"out", out}},
                     {profile_path}, {out}, t.seconds());
  std::cout << "wrote " << out << " (" << sched.segments.size() << " segments, duration "
            << es::format_double(sched.total_duration) << ")\n";
  return 0;
}

int run_simulate(const std::string& sched_path, const std::string& omega_list,
                 const std::string& grid_spec, double dt, long stride, const std::string& out,
                 bool plot) {
  timer t;
  const es::control_schedule sched = es::schedule_from_file(sched_path);
  const es::fourier_kernel kernel(sched.profile);
  es::sim_config cfg;
  cfg.omega_grid = resolve_omegas(omega_list, grid_spec, {});
  cfg.dt_max = dt;
  cfg.record_stride = stride;
  const int workers = env_workers();
  const es::ensemble_result result = es::ensemble_propagate(sched, kernel, cfg, workers);
  es::write_text_file(out, es::result_csv(result, sched));
  std::vector<std::string> outputs{out};

  if (plot) {
    const std::string stem = plot_stem(out);
    std::vector<double> grid_omega, grid_infid;
    for (std::size_t j = 0; j < result.entries.size(); ++j) {
      const es::ensemble_entry& e = result.entries[j];
      const std::string path = stem + ".populations." + std::to_string(j) + ".svg";
      es::write_text_file(
          path, es::svg_line_chart("populations, omega=" + es::format_double(e.lab.omega), "t",
                                   "population",
                                   {{"P", e.lab.times, e.population, "#1f6fb2", false},
                                    {"P_ref", e.lab.times, e.population_ref, "#d1495b", true}}));
      outputs.push_back(path);
      grid_omega.push_back(e.lab.omega);
      grid_infid.push_back(e.final_infidelity);
    }
    const std::string infid_path = stem + ".infidelity.svg";
    es::write_text_file(infid_path,
                        es::svg_line_chart("final infidelity vs omega", "omega", "1 - F",
                                           {{"infidelity", grid_omega, grid_infid, "#2e8b57", false}}));
    outputs.push_back(infid_path);
  }

  es::write_manifest(out, "simulate",
                     {{"schedule", sched_path},
                      {"omega", omega_list},
                      {"omega-grid", grid_spec},
                      {"dt", dt > 0 ? es::format_double(dt) : std::string("default")},
                      {"stride", std::to_string(stride)},
                      {"plot", plot ? "true" : "false"},
                      {"threads", std::to_string(workers)},
                      {"out", out}},
                     {sched_path}, outputs, t.seconds());
  std::cout << "wrote " << out << " (" << result.entries.size() << " omega values, drift "
            << es::format_double(result.max_unitarity_drift) << ")\n";
  return 0;
}

int run_sweep(const std::string& profile_path, const std::string& eps1_list,
              const std::string& n_list, const std::string& omega_list,
              const std::string& grid_spec, double dt, const std::string& out) {
  timer t;
  const es::target_profile profile = es::profile_from_file(profile_path);
  std::vector<int> n_pairs;
  for (double v : parse_double_list(n_list, "--N")) {
    if (v < 1 || v != std::floor(v)) throw std::invalid_argument("--N: entries must be integers >= 1");
    n_pairs.push_back(static_cast<int>(v));
  }
  const std::vector<double> omegas =
      resolve_omegas(omega_list, grid_spec, es::default_omega_grid(profile));
  const es::sweep_report report =
      es::theorem1_sweep(profile, parse_double_list(eps1_list, "--eps1"), n_pairs, omegas, dt,
                         env_workers());
  es::write_text_file(out, es::sweep_csv(report));
  es::write_manifest(out, "sweep",
                     {{"profile", profile_path},
                      {"eps1", eps1_list},
                      {"N", n_list},
                      {"omega", omega_list.empty() && grid_spec.empty() ? "default" : omega_list},
                      {"omega-grid", grid_spec},
                      {"dt", dt > 0 ? es::format_double(dt) : std::string("default")},
                      {"out", out}},
                     {profile_path}, {out}, t.seconds());
  std::cout << es::sweep_csv(report);
  return 0;
}

int run_verify_lemmas(const std::string& profile_path, std::vector<int> lemmas,
                      const std::string& eps2_list, bool coarse, const std::string& out) {
  timer t;
  const es::target_profile profile = es::profile_from_file(profile_path);
  const es::fourier_kernel kernel(profile,
                                  coarse ? es::quadrature_spec::coarse() : es::quadrature_spec{});
  if (lemmas.empty()) lemmas = {1, 2, 3, 4, 5};
  json report;
  bool all_pass = true;
  auto record = [&](int lemma, bool pass, const json& detail) {
    report["lemma" + std::to_string(lemma)] = detail;
    report["lemma" + std::to_string(lemma)]["pass"] = pass;
    all_pass = all_pass && pass;
    std::cout << "lemma " << lemma << ": " << (pass ? "PASS" : "FAIL") << "  " << detail.dump()
              << "\n";
  };

  for (int lemma : lemmas) {
    switch (lemma) {
      case 1: {
        std::vector<double> grid;
        for (int i = 0; i < 25; ++i)
          grid.push_back(10.0 * std::pow(40.0, i / 24.0));  // log-spaced [10, 400]
        const es::decay_report rep = kernel.verify_decay(3, grid);
        json rows = json::array();
        for (const es::decay_row& r : rep.rows)
          rows.push_back({{"n", r.n}, {"C_n", r.c_n}, {"bounded", r.bounded}});
        record(1, rep.all_bounded, {{"rows", rows}});
        break;
      }
      case 2: {
        const std::vector<double> eps1s{0.1, 0.05, 0.025, 0.0125};
        std::vector<double> errs;
        for (double e : eps1s) errs.push_back(kernel.truncation_error(e, 1.4));
        const double slope = es::fit_log_order(eps1s, errs);
        record(2, slope > 2.0, {{"omega", 1.4}, {"errors", errs}, {"loglog_slope", slope}});
        break;
      }
      case 3: {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> eps1_dist(0.02, 0.2), w_dist(0.5, 2.5);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i)
          worst = std::max(worst, std::fabs(kernel.odd_integral(eps1_dist(rng), w_dist(rng))));
        record(3, worst <= 1e-12, {{"max_abs", worst}, {"samples", 20}});
        break;
      }
      case 4: {
        const es::lemma4_report rep = es::lemma4_scaling_test(
            kernel, 0.01, parse_double_list(eps2_list, "--eps2"), {0.5, 0.7, 0.9});
        json rows = json::array();
        for (const es::lemma4_row& r : rep.rows)
          rows.push_back({{"eps2", r.eps2}, {"max_err", r.max_err}});
        record(4, rep.pass, {{"rows", rows}, {"order", rep.order}});
        break;
      }
      case 5: {
        const double dt = 0.002;
        const double tol = 5.0 * dt * dt;
        struct tuple_spec {
          int nu;
          double omega, eps2;
        };
        const std::vector<tuple_spec> tuples{{+1, 0.7, 0.05}, {-1, 0.7, 0.05}, {+1, 0.5, 0.02}, {-1, 1.0, 0.08}};
        json rows = json::array();
        bool pass = true;
        for (const tuple_spec& s : tuples) {
          const double dist = es::lemma5_frame_check(kernel, 0.05, s.eps2, s.nu, s.omega, dt);
          pass = pass && dist <= tol;
          rows.push_back({{"nu", s.nu}, {"omega", s.omega}, {"eps2", s.eps2}, {"distance", dist}});
        }
        record(5, pass, {{"rows", rows}, {"tolerance", tol}});
        break;
      }
      default:
        throw std::invalid_argument("--lemma: must be in 1..5");
    }
  }

  report["all_pass"] = all_pass;
  if (!out.empty()) {
    es::write_text_file(out, report.dump(2) + "\n");
    es::write_manifest(out, "verify-lemmas",
                       {{"profile", profile_path},
                        {"eps2", eps2_list},
                        {"coarse-quadrature", coarse ? "true" : "false"},
                        {"out", out}},
                       {profile_path}, {out}, t.seconds());
  }
  std::cout << (all_pass ? "all selected lemma checks passed" : "lemma check FAILED") << "\n";
  return all_pass ? 0 : 4;
}

int run_euler(const std::string& bump_list, const std::string& alpha, const std::string& beta,
              const std::string& gamma, double eps1, int n_pairs, const std::string& omega_list,
              const std::string& grid_spec, double dt, const std::string& prefix) {
  timer t;
  const std::vector<double> bp_vals = parse_double_list(bump_list, "--bump");
  if (bp_vals.size() != 4) throw std::invalid_argument("--bump: expected a,b,c,d");
  const es::bump_params bp{bp_vals[0], bp_vals[1], bp_vals[2], bp_vals[3]};
  const es::target_profile prof_alpha(bp, alpha), prof_beta(bp, beta), prof_gamma(bp, gamma);
  const auto schedules = es::euler_compose(prof_alpha, prof_beta, prof_gamma, eps1, n_pairs);
  const std::vector<std::string> names{prefix + ".gamma.json", prefix + ".beta.json",
                                       prefix + ".alpha.json"};
  for (std::size_t i = 0; i < 3; ++i) es::write_text_file(names[i], es::schedule_to_json(schedules[i]));

  es::sim_config cfg;
  cfg.omega_grid = resolve_omegas(omega_list, grid_spec, {0.5, 0.7, 0.9});
  cfg.dt_max = dt;
  cfg.record_stride = std::numeric_limits<long>::max();
  const int workers = env_workers();
  std::vector<es::ensemble_result> runs;
  for (const es::control_schedule& sched : schedules) {
    const es::fourier_kernel kernel(sched.profile);
    runs.push_back(es::ensemble_propagate(sched, kernel, cfg, workers));
  }

  std::string csv =
      "omega,re00,im00,re01,im01,re10,im10,re11,im11,frob_err_to_target,err_alpha,err_beta,err_gamma\n";
  for (std::size_t j = 0; j < cfg.omega_grid.size(); ++j) {
    const double w = cfg.omega_grid[j];
    const es::unitary2 composite = runs[2].entries[j].lab.states.back() *
                                   runs[1].entries[j].lab.states.back() *
                                   runs[0].entries[j].lab.states.back();
    const es::unitary2 target = es::pauli_exp(prof_alpha.eval_f(w), 0, 0) *
                                es::pauli_exp(0, prof_beta.eval_f(w), 0) *
                                es::pauli_exp(prof_gamma.eval_f(w), 0, 0);
    csv += es::format_double(w);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        csv += ',';
        csv += es::format_double(composite(r, c).real());
        csv += ',';
        csv += es::format_double(composite(r, c).imag());
      }
    csv += ',';
    csv += es::format_double(es::frobenius_distance(composite, target));
    csv += ',';
    csv += es::format_double(runs[2].entries[j].final_frob);
    csv += ',';
    csv += es::format_double(runs[1].entries[j].final_frob);
    csv += ',';
    csv += es::format_double(runs[0].entries[j].final_frob);
    csv += '\n';
  }
  const std::string csv_path = prefix + ".composite.csv";
  es::write_text_file(csv_path, csv);
  std::vector<std::string> outputs = names;
  outputs.push_back(csv_path);
  es::write_manifest(csv_path, "euler",
                     {{"bump", bump_list},
                      {"alpha", alpha},
                      {"beta", beta},
                      {"gamma", gamma},
                      {"eps1", es::format_double(eps1)},
                      {"N", std::to_string(n_pairs)},
                      {"dt", dt > 0 ? es::format_double(dt) : std::string("default")},
                      {"out-prefix", prefix}},
                     {}, outputs, t.seconds());
  std::cout << "wrote " << csv_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ensemble control synthesis and simulation for two-level systems"};
  app.set_version_flag("--version", es::version_string);
  app.require_subcommand(1);

  std::string profile_path, sched_path, out, axis = "y", omega_list, grid_spec;
  std::string eps1_list, n_list, eps2_list = "0.1,0.05,0.025";
  std::string bump_list = "0.4,0.5,1,1.1", alpha, beta, gamma, prefix;
  std::vector<int> lemmas;
  double eps1 = 0, dt = 0;
  int n_pairs = 0;
  long stride = 10;
  bool plot = false, coarse = false;

  CLI::App* synth = app.add_subcommand("synthesize", "build a control schedule");
  synth->add_option("--profile", profile_path, "profile JSON file")->required()->check(CLI::ExistingFile);
  synth->add_option("--eps1", eps1, "pulse window inverse half-width")->required()->check(CLI::PositiveNumber);
  synth->add_option("--N", n_pairs, "number of window pairs")->required()->check(CLI::Range(1, 1000000));
  synth->add_option("--axis", axis, "target rotation axis")->check(CLI::IsMember({"x", "y"}));
  synth->add_option("--out", out, "output schedule JSON")->required();

  CLI::App* sim = app.add_subcommand("simulate", "propagate an omega ensemble under a schedule");
  sim->add_option("--schedule", sched_path, "schedule JSON file")->required()->check(CLI::ExistingFile);
  sim->add_option("--omega", omega_list, "comma-separated omega values");
  sim->add_option("--omega-grid", grid_spec, "lo:hi:n evenly spaced omega grid");
  sim->add_option("--dt", dt, "time step ceiling")->check(CLI::PositiveNumber);
  sim->add_option("--stride", stride, "record every k-th step")->check(CLI::Range(1L, 1000000000L));
  sim->add_option("--out", out, "output CSV")->required();
  sim->add_flag("--plot", plot, "emit SVG charts next to the CSV");

  CLI::App* swp = app.add_subcommand("sweep", "convergence sweep over (eps1, N)");
  swp->add_option("--profile", profile_path, "profile JSON file")->required()->check(CLI::ExistingFile);
  swp->add_option("--eps1", eps1_list, "comma-separated eps1 values")->required();
  swp->add_option("--N", n_list, "comma-separated N values")->required();
  swp->add_option("--omega", omega_list, "comma-separated omega values");
  swp->add_option("--omega-grid", grid_spec, "lo:hi:n evenly spaced omega grid");
  swp->add_option("--dt", dt, "time step ceiling")->check(CLI::PositiveNumber);
  swp->add_option("--out", out, "output CSV")->required();

  CLI::App* ver = app.add_subcommand("verify-lemmas", "run kernel and frame-identity certificates");
  ver->add_option("--profile", profile_path, "profile JSON file")->required()->check(CLI::ExistingFile);
  ver->add_option("--lemma", lemmas, "subset of checks to run (1..5)")->delimiter(',');
  ver->add_option("--eps2", eps2_list, "eps2 list for the scaling certificate");
  ver->add_flag("--coarse-quadrature", coarse, "use a deliberately coarse kernel quadrature");
  ver->add_option("--out", out, "optional JSON report path");

  CLI::App* eul = app.add_subcommand("euler", "three-schedule Euler X-Y-X composition");
  eul->add_option("--bump", bump_list, "bump parameters a,b,c,d");
  eul->add_option("--alpha", alpha, "alpha amplitude expression")->required();
  eul->add_option("--beta", beta, "beta amplitude expression")->required();
  eul->add_option("--gamma", gamma, "gamma amplitude expression")->required();
  eul->add_option("--eps1", eps1, "pulse window inverse half-width")->check(CLI::PositiveNumber);
  eul->add_option("--N", n_pairs, "number of window pairs")->check(CLI::Range(1, 1000000));
  eul->add_option("--omega", omega_list, "comma-separated omega values");
  eul->add_option("--omega-grid", grid_spec, "lo:hi:n evenly spaced omega grid");
  eul->add_option("--dt", dt, "time step ceiling")->check(CLI::PositiveNumber);
  eul->add_option("--out-prefix", prefix, "output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (synth->parsed()) return run_synthesize(profile_path, eps1, n_pairs, axis, out);
    if (sim->parsed()) return run_simulate(sched_path, omega_list, grid_spec, dt, stride, out, plot);
    if (swp->parsed()) return run_sweep(profile_path, eps1_list, n_list, omega_list, grid_spec, dt, out);
    if (ver->parsed()) return run_verify_lemmas(profile_path, lemmas, eps2_list, coarse, out);
    if (eul->parsed())
      return run_euler(bump_list, alpha, beta, gamma, eps1 > 0 ? eps1 : 0.05,
                       n_pairs > 0 ? n_pairs : 10, omega_list, grid_spec, dt, prefix);
  } catch (const es::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
