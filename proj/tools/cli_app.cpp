#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "magvac/magvac.hpp"

namespace magvac::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;
constexpr int kExitIo = 5;

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Accumulates the whole table, then commits atomically (temp file + rename)
// so readers never observe a partial CSV.
class CsvWriter {
 public:
  void comment(const std::string& text) { buffer_ += "# " + text + "\n"; }
  void line(const std::string& text) { buffer_ += text + "\n"; }

  void commit(const std::string& out_path) const {
    if (out_path.empty()) {
      std::fwrite(buffer_.data(), 1, buffer_.size(), stdout);
      std::fflush(stdout);
      return;
    }
    const std::string tmp = out_path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
      if (!out) throw IoError("cannot open for writing: " + tmp);
      out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
      out.flush();
      if (!out) throw IoError("write failure on " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, out_path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + out_path);
  }

 private:
  std::string buffer_;
};

void write_standard_comments(CsvWriter& csv, const RunConfig& cfg, bool thermal) {
  csv.comment(std::string("magvac ") + kVersion);
  csv.comment("subcommand: " + cfg.subcommand);
  csv.comment("masses: " + fmt_g(cfg.masses[0]) + "," + fmt_g(cfg.masses[1]) + "," +
              fmt_g(cfg.masses[2]));
  csv.comment(std::string("beta: ") + (thermal ? fmt_g(cfg.beta) : std::string("n/a")));
  csv.comment("rel_tol: " + fmt_g(cfg.rel_tol) + ", abs_tol: " + fmt_g(cfg.abs_tol));
  csv.comment("natural units: hbar = c = k_B = e = 1 (masses, momenta, temperatures and");
  csv.comment("field strengths are commensurate dimensionless numbers)");
}

QuadratureConfig quadrature_config(const RunConfig& cfg) {
  QuadratureConfig q;
  q.rel_tol = cfg.rel_tol;
  q.abs_tol = cfg.abs_tol;
  return q;
}

// Runs fn(i) for i in [0, n) across `threads` workers on contiguous chunks.
// The caller stores per-index results, so output order never depends on the
// scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(threads, 1);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(lo + chunk, n);
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = lo + i * step;
  return grid;
}

int run_scheme(const RunConfig& cfg) {
  const PauliVillarsScheme scheme = make_scheme(cfg.masses[0], cfg.masses[1], cfg.masses[2]);
  double coeff_residual = 0.0;
  double moment_residual = 0.0;
  for (int j = 0; j < 3; ++j) {
    coeff_residual += scheme.coeffs[j];
    moment_residual += scheme.coeffs[j] * scheme.masses[j] * scheme.masses[j];
  }
  moment_residual /= scheme.masses[2] * scheme.masses[2];

  CsvWriter csv;
  write_standard_comments(csv, cfg, false);
  csv.line("m0,m1,m2,c0,c1,c2,lambda,coeff_residual,moment_residual");
  csv.line(fmt_g(scheme.masses[0]) + "," + fmt_g(scheme.masses[1]) + "," +
           fmt_g(scheme.masses[2]) + "," + fmt_g(scheme.coeffs[0]) + "," +
           fmt_g(scheme.coeffs[1]) + "," + fmt_g(scheme.coeffs[2]) + "," + fmt_g(scheme.lambda) +
           "," + fmt_g(std::abs(coeff_residual)) + "," + fmt_g(std::abs(moment_residual)));
  csv.commit(cfg.out_path);
  return kExitOk;
}

int run_response(const RunConfig& cfg) {
  const PauliVillarsScheme scheme = make_scheme(cfg.masses[0], cfg.masses[1], cfg.masses[2]);
  const QuadratureConfig qcfg = quadrature_config(cfg);
  const std::vector<double> grid = linear_grid(cfg.q_min, cfg.q_max, cfg.q_steps);

  std::vector<ResponsePoint> rows(grid.size());
  parallel_for(grid.size(), cfg.threads,
               [&](std::size_t i) { rows[i] = response_point(grid[i], cfg.beta, scheme, qcfg); });

  const bool all_converged =
      std::all_of(rows.begin(), rows.end(), [](const ResponsePoint& r) { return r.converged; });

  CsvWriter csv;
  write_standard_comments(csv, cfg, true);
  csv.line(all_converged ? "q,M0,MT,Mtotal,err" : "q,M0,MT,Mtotal,err,converged");
  for (const ResponsePoint& r : rows) {
    std::string line = fmt_g(r.q) + "," + fmt_g(r.m0_value) + "," + fmt_g(r.mt_value) + "," +
                       fmt_g(r.total) + "," + fmt_g(r.err);
    if (!all_converged) line += r.converged ? ",1" : ",0";
    csv.line(line);
  }
  csv.commit(cfg.out_path);
  return all_converged ? kExitOk : kExitConvergence;
}

int run_lagrangian(const RunConfig& cfg) {
  const PauliVillarsScheme scheme = make_scheme(cfg.masses[0], cfg.masses[1], cfg.masses[2]);
  const QuadratureConfig qcfg = quadrature_config(cfg);
  const std::vector<double> grid = linear_grid(cfg.a_min, cfg.a_max, cfg.a_steps);

  std::vector<DensityPoint> rows(grid.size());
  parallel_for(grid.size(), cfg.threads,
               [&](std::size_t i) { rows[i] = total_density(grid[i], cfg.beta, scheme, qcfg); });

  const bool all_converged =
      std::all_of(rows.begin(), rows.end(), [](const DensityPoint& r) { return r.converged; });

  CsvWriter csv;
  write_standard_comments(csv, cfg, true);
  csv.line(all_converged ? "a,f0,ft,total,extrapolated" : "a,f0,ft,total,extrapolated,converged");
  for (const DensityPoint& r : rows) {
    std::string line = fmt_g(r.a) + "," + fmt_g(r.f0) + "," + fmt_g(r.ft) + "," + fmt_g(r.total) +
                       "," + (r.extrapolated ? "1" : "0");
    if (!all_converged) line += r.converged ? ",1" : ",0";
    csv.line(line);
  }
  csv.commit(cfg.out_path);
  return all_converged ? kExitOk : kExitConvergence;
}

int run_density(const RunConfig& cfg) {
  const PauliVillarsScheme scheme = make_scheme(cfg.masses[0], cfg.masses[1], cfg.masses[2]);
  const QuadratureConfig qcfg = quadrature_config(cfg);

  const FieldGrid grid = load_field(cfg.field_path);
  const double divergence = divergence_check(grid);
  if (divergence > cfg.div_threshold)
    throw DomainError("max |div B| = " + fmt_g(divergence) + " exceeds threshold " +
                      fmt_g(cfg.div_threshold));

  const EnergyReport report =
      scaled_energy(grid, cfg.epsilon, cfg.beta, scheme, qcfg, SeriesPolicy{}, cfg.threads);

  std::cerr << "boundary max |B| = " << fmt_g(report.boundary_max)
            << " (tail-leakage diagnostic)\n";

  CsvWriter csv;
  write_standard_comments(csv, cfg, true);
  csv.comment("field: " + cfg.field_path);
  csv.comment("dims: " + std::to_string(grid.dims[0]) + "x" + std::to_string(grid.dims[1]) + "x" +
              std::to_string(grid.dims[2]) + ", spacing: " + fmt_g(grid.spacing));
  csv.comment("boundary_max_abs: " + fmt_g(report.boundary_max));
  csv.comment("resampled_energy: " + fmt_g(report.resampled_energy) +
              ", resample_rel_diff: " + fmt_g(report.resample_rel_diff));
  csv.line(report.converged ? "energy,epsilon,scaled_energy,cells_clipped,max_divergence"
                            : "energy,epsilon,scaled_energy,cells_clipped,max_divergence,converged");
  std::string line = fmt_g(report.energy) + "," + fmt_g(report.epsilon) + "," +
                     fmt_g(report.scaled_energy) + "," + std::to_string(report.cells_clipped) +
                     "," + fmt_g(report.max_divergence);
  if (!report.converged) line += ",0";
  csv.line(line);
  csv.commit(cfg.out_path);
  return report.converged ? kExitOk : kExitConvergence;
}

int run_selftest(const RunConfig& cfg) {
  const PauliVillarsScheme scheme = make_scheme(cfg.masses[0], cfg.masses[1], cfg.masses[2]);
  const QuadratureConfig qcfg = quadrature_config(cfg);
  const std::vector<OracleCheck> checks = magvac::run_selftest(scheme, qcfg);

  CsvWriter csv;
  write_standard_comments(csv, cfg, false);
  csv.line("check,value,oracle,rel_diff");
  bool all_pass = true;
  for (const OracleCheck& c : checks) {
    csv.line(c.name + "," + fmt_g(c.value) + "," + fmt_g(c.oracle) + "," + fmt_g(c.rel_diff));
    all_pass = all_pass && c.pass;
    if (!c.pass)
      std::cerr << "selftest violation: " << c.name << " rel_diff " << fmt_g(c.rel_diff)
                << " exceeds tol " << fmt_g(c.tol) << "\n";
  }
  csv.commit(cfg.out_path);
  return all_pass ? kExitOk : kExitConvergence;
}

int default_threads() {
  if (const char* env = std::getenv("MAGVAC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
  }
  return 1;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.subcommand == "scheme") return run_scheme(config);
    if (config.subcommand == "response") return run_response(config);
    if (config.subcommand == "lagrangian") return run_lagrangian(config);
    if (config.subcommand == "density") return run_density(config);
    if (config.subcommand == "selftest") return run_selftest(config);
    std::cerr << "unknown subcommand: " << config.subcommand << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  cfg.threads = default_threads();

  CLI::App app{"One-loop QED vacuum response and Euler-Heisenberg energy densities in a "
               "classical magnetic field, Pauli-Villars regularized, at zero and positive "
               "temperature (natural units)."};
  app.require_subcommand(1);

  std::vector<double> masses{1.0, 2.0, 3.0};
  double beta_flag = 0.0;
  double temperature_flag = 0.0;

  CLI::Option* beta_opts[5] = {};
  CLI::Option* temp_opts[5] = {};

  auto add_common = [&](CLI::App* sub, int slot, bool thermal) {
    sub->add_option("--masses", masses,
                    "Fermion mass and the two regulator masses, m0<m1<m2 (comma separated)")
        ->delimiter(',')
        ->expected(3);
    sub->add_option("--rel-tol", cfg.rel_tol, "Quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--abs-tol", cfg.abs_tol, "Quadrature absolute tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "Worker threads (default: MAGVAC_THREADS or 1)")
        ->check(CLI::Range(1, 4096));
    sub->add_option("--out", cfg.out_path, "Output CSV path (default: stdout)");
    if (thermal) {
      beta_opts[slot] =
          sub->add_option("--beta", beta_flag, "Inverse temperature (accepts inf for T = 0)");
      temp_opts[slot] =
          sub->add_option("--temperature", temperature_flag, "Temperature T; beta = 1/T (0 = T0)")
              ->check(CLI::NonNegativeNumber);
    }
  };

  CLI::App* sub_scheme = app.add_subcommand("scheme", "Report regulator coefficients and cutoff");
  add_common(sub_scheme, 0, false);

  CLI::App* sub_response = app.add_subcommand("response", "Sweep the dielectric response M0/MT");
  add_common(sub_response, 1, true);
  sub_response->add_option("--q-min", cfg.q_min, "Lowest momentum")->check(CLI::NonNegativeNumber);
  sub_response->add_option("--q-max", cfg.q_max, "Highest momentum")->check(CLI::NonNegativeNumber);
  sub_response->add_option("--q-steps", cfg.q_steps, "Number of grid points")
      ->check(CLI::Range(1, 1000000));

  CLI::App* sub_lagrangian =
      app.add_subcommand("lagrangian", "Sweep the Euler-Heisenberg energy densities over |B|");
  add_common(sub_lagrangian, 2, true);
  sub_lagrangian->add_option("--a-min", cfg.a_min, "Lowest field strength |B|")
      ->check(CLI::NonNegativeNumber);
  sub_lagrangian->add_option("--a-max", cfg.a_max, "Highest field strength |B|")
      ->check(CLI::NonNegativeNumber);
  sub_lagrangian->add_option("--a-steps", cfg.a_steps, "Number of grid points")
      ->check(CLI::Range(1, 1000000));

  CLI::App* sub_density =
      app.add_subcommand("density", "Local-density energy of a sampled magnetic field");
  add_common(sub_density, 3, true);
  sub_density->add_option("--field", cfg.field_path, "Input field CSV (x,y,z,Bx,By,Bz)")
      ->required();
  sub_density->add_option("--epsilon", cfg.epsilon, "Scaling parameter of B(epsilon x)")
      ->check(CLI::PositiveNumber);
  sub_density->add_option("--div-threshold", cfg.div_threshold,
                          "Reject grids whose max |div B| exceeds this")
      ->check(CLI::PositiveNumber);

  CLI::App* sub_selftest =
      app.add_subcommand("selftest", "Run the oracle identity suite and report a CSV");
  add_common(sub_selftest, 4, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  cfg.subcommand = active->get_name();

  cfg.masses = {masses[0], masses[1], masses[2]};

  const bool thermal = cfg.subcommand == "response" || cfg.subcommand == "lagrangian" ||
                       cfg.subcommand == "density";
  if (thermal) {
    int slot = cfg.subcommand == "response" ? 1 : cfg.subcommand == "lagrangian" ? 2 : 3;
    const int n_beta = static_cast<int>(beta_opts[slot]->count());
    const int n_temp = static_cast<int>(temp_opts[slot]->count());
    if (n_beta + n_temp != 1) {
      std::cerr << "usage error: give exactly one of --beta / --temperature\n";
      return kExitUsage;
    }
    if (n_beta == 1) {
      if (std::isnan(beta_flag) || beta_flag <= 0.0) {
        std::cerr << "usage error: --beta must be positive (or inf)\n";
        return kExitUsage;
      }
      cfg.beta = beta_flag;
    } else {
      cfg.beta = temperature_flag == 0.0 ? kZeroTemperature : 1.0 / temperature_flag;
    }
  }

  if (cfg.subcommand == "response" && cfg.q_min > cfg.q_max) {
    std::cerr << "usage error: --q-min must not exceed --q-max\n";
    return kExitUsage;
  }
  if (cfg.subcommand == "lagrangian" && cfg.a_min > cfg.a_max) {
    std::cerr << "usage error: --a-min must not exceed --a-max\n";
    return kExitUsage;
  }

  return run(cfg);
}

}  // namespace magvac::cli
