#include "magvac/field_grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "magvac/errors.hpp"

namespace magvac {

namespace {

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

std::array<double, 3> normalized(const std::array<double, 3>& v, const char* what) {
  const double n = norm3(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError(std::string(what) + " must be nonzero");
  return {v[0] / n, v[1] / n, v[2] / n};
}

void validate_grid_shape(const FieldGrid& grid) {
  for (int d : grid.dims)
    if (d < 1) throw DomainError("grid dims must be positive");
  const std::size_t expected = static_cast<std::size_t>(grid.dims[0]) * grid.dims[1] * grid.dims[2];
  if (grid.values.size() != expected)
    throw DomainError("grid value count does not match dims");
  if (!(grid.spacing > 0.0) || !std::isfinite(grid.spacing))
    throw DomainError("grid spacing must be positive");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// Catmull-Rom cubic through p1 (t=0) and p2 (t=1). Node queries must
// reproduce the stored values bitwise (resampling at epsilon = 1 is an
// identity and lands on t = 1 along the top edges), so the two node cases
// return directly instead of relying on the polynomial's cancellation.
double catmull_rom(double p0, double p1, double p2, double p3, double t) {
  if (t == 0.0) return p1;
  if (t == 1.0) return p2;
  return 0.5 * (2.0 * p1 + (-p0 + p2) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t * t * t);
}

// Sample the grid at fractional index coordinates t (units of spacing,
// relative to origin). Returns zero outside the grid's support.
std::array<double, 3> sample_tricubic(const FieldGrid& grid, const std::array<double, 3>& t) {
  constexpr double kEdgeTol = 1e-9;
  for (int c = 0; c < 3; ++c)
    if (t[c] < -kEdgeTol || t[c] > grid.dims[c] - 1 + kEdgeTol) return {0.0, 0.0, 0.0};

  std::array<int, 3> base;
  std::array<double, 3> frac;
  for (int c = 0; c < 3; ++c) {
    const double clamped = std::clamp(t[c], 0.0, static_cast<double>(grid.dims[c] - 1));
    int i = static_cast<int>(std::floor(clamped));
    i = std::clamp(i, 0, std::max(grid.dims[c] - 2, 0));
    base[c] = i;
    frac[c] = clamped - i;
  }

  auto clamped_value = [&grid](int ix, int iy, int iz) -> const std::array<double, 3>& {
    ix = std::clamp(ix, 0, grid.dims[0] - 1);
    iy = std::clamp(iy, 0, grid.dims[1] - 1);
    iz = std::clamp(iz, 0, grid.dims[2] - 1);
    return grid.values[grid.index(ix, iy, iz)];
  };

  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    double plane[4];
    for (int di = 0; di < 4; ++di) {
      double line[4];
      for (int dj = 0; dj < 4; ++dj) {
        double col[4];
        for (int dk = 0; dk < 4; ++dk)
          col[dk] = clamped_value(base[0] + di - 1, base[1] + dj - 1, base[2] + dk - 1)[c];
        line[dj] = catmull_rom(col[0], col[1], col[2], col[3], frac[2]);
      }
      plane[di] = catmull_rom(line[0], line[1], line[2], line[3], frac[1]);
    }
    out[c] = catmull_rom(plane[0], plane[1], plane[2], plane[3], frac[0]);
  }
  return out;
}

}  // namespace

FieldGrid make_test_field(TestFieldKind kind, const TestFieldParams& params) {
  for (int d : params.dims)
    if (d < 1) throw DomainError("make_test_field dims must be positive");
  if (!(params.spacing > 0.0) || !std::isfinite(params.spacing))
    throw DomainError("make_test_field spacing must be positive");
  if (!std::isfinite(params.amplitude)) throw DomainError("make_test_field amplitude must be finite");

  FieldGrid grid;
  grid.dims = params.dims;
  grid.spacing = params.spacing;
  for (int c = 0; c < 3; ++c) grid.origin[c] = -0.5 * (params.dims[c] - 1) * params.spacing;
  grid.values.resize(static_cast<std::size_t>(params.dims[0]) * params.dims[1] * params.dims[2]);

  const std::array<double, 3> axis = normalized(params.direction, "direction");

  if (kind == TestFieldKind::constant) {
    const std::array<double, 3> b{params.amplitude * axis[0], params.amplitude * axis[1],
                                  params.amplitude * axis[2]};
    std::fill(grid.values.begin(), grid.values.end(), b);
    return grid;
  }

  if (!(params.width > 0.0) || !std::isfinite(params.width))
    throw DomainError("make_test_field width must be positive");
  const double w2 = params.width * params.width;
  for (int i = 0; i < grid.dims[0]; ++i)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int k = 0; k < grid.dims[2]; ++k) {
        const std::array<double, 3> p = grid.position(i, j, k);
        const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        const double psi = params.amplitude * std::exp(-r2 / w2);
        // B = grad(psi) x axis, divergence-free by construction.
        const std::array<double, 3> g{-2.0 * p[0] / w2 * psi, -2.0 * p[1] / w2 * psi,
                                      -2.0 * p[2] / w2 * psi};
        grid.values[grid.index(i, j, k)] = {g[1] * axis[2] - g[2] * axis[1],
                                            g[2] * axis[0] - g[0] * axis[2],
                                            g[0] * axis[1] - g[1] * axis[0]};
      }
  return grid;
}

FieldGrid load_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field file: " + path.string());

  struct Row {
    std::array<double, 3> pos;
    std::array<double, 3> b;
  };
  std::vector<Row> rows;
  std::string line;
  bool first_data_candidate = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;

    std::array<double, 6> fields;
    std::size_t start = 0;
    int n_fields = 0;
    bool bad = false;
    const std::string s(sv);
    while (start <= s.size()) {
      const std::size_t comma = s.find(',', start);
      const std::string_view field(s.data() + start,
                                   (comma == std::string::npos ? s.size() : comma) - start);
      if (n_fields >= 6 || !parse_double(field, fields[n_fields])) {
        bad = true;
        break;
      }
      ++n_fields;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (bad || n_fields != 6) {
      // Allow exactly one leading header line of column names.
      if (first_data_candidate) {
        first_data_candidate = false;
        continue;
      }
      throw ParseError("malformed field row at line " + std::to_string(line_no) + " of " +
                       path.string());
    }
    first_data_candidate = false;
    rows.push_back({{fields[0], fields[1], fields[2]}, {fields[3], fields[4], fields[5]}});
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  if (rows.size() < 2) throw IncompleteGrid("field file must contain at least 2 grid points");

  const std::size_t n = rows.size();
  std::size_t nz = n;
  for (std::size_t r = 1; r < n; ++r)
    if (rows[r].pos[0] != rows[0].pos[0] || rows[r].pos[1] != rows[0].pos[1]) {
      nz = r;
      break;
    }
  if (n % nz != 0) throw IncompleteGrid("row count is not a multiple of the z extent");
  std::size_t ny_nz = n;
  for (std::size_t r = nz; r < n; r += nz)
    if (rows[r].pos[0] != rows[0].pos[0]) {
      ny_nz = r;
      break;
    }
  if (ny_nz % nz != 0 || n % ny_nz != 0)
    throw IncompleteGrid("rows do not form a complete x/y/z block structure");
  const std::size_t ny = ny_nz / nz;
  const std::size_t nx = n / ny_nz;

  double h = 0.0;
  if (nz >= 2)
    h = rows[1].pos[2] - rows[0].pos[2];
  else if (ny >= 2)
    h = rows[nz].pos[1] - rows[0].pos[1];
  else
    h = rows[ny_nz].pos[0] - rows[0].pos[0];
  if (!(h > 0.0) || !std::isfinite(h))
    throw NonUniformGrid("grid coordinates must increase with row-major (z fastest) order");

  FieldGrid grid;
  grid.origin = rows[0].pos;
  grid.spacing = h;
  grid.dims = {static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nz)};
  grid.values.resize(n);

  std::size_t r = 0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t k = 0; k < nz; ++k, ++r) {
        const std::array<double, 3> expected{grid.origin[0] + static_cast<double>(i) * h,
                                             grid.origin[1] + static_cast<double>(j) * h,
                                             grid.origin[2] + static_cast<double>(k) * h};
        for (int c = 0; c < 3; ++c) {
          const double tol = 1e-9 * std::max(1.0, std::abs(expected[c]));
          if (std::abs(rows[r].pos[c] - expected[c]) > tol)
            throw NonUniformGrid("grid coordinates deviate from a uniform lattice near data row " +
                                 std::to_string(r + 1));
        }
        grid.values[r] = rows[r].b;
      }
  return grid;
}

void save_field(const FieldGrid& grid, const std::filesystem::path& path) {
  validate_grid_shape(grid);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out << "x,y,z,Bx,By,Bz\n";
    char buf[256];
    for (int i = 0; i < grid.dims[0]; ++i)
      for (int j = 0; j < grid.dims[1]; ++j)
        for (int k = 0; k < grid.dims[2]; ++k) {
          const std::array<double, 3> p = grid.position(i, j, k);
          const std::array<double, 3>& b = grid.values[grid.index(i, j, k)];
          std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", p[0], p[1],
                        p[2], b[0], b[1], b[2]);
          out << buf;
        }
    out.flush();
    if (!out) throw IoError("write failure on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string());
}

double divergence_check(const FieldGrid& grid) {
  validate_grid_shape(grid);
  for (int d : grid.dims)
    if (d < 3) throw GridTooSmall("divergence_check needs at least 3 cells per axis");
  const double inv2h = 1.0 / (2.0 * grid.spacing);
  double worst = 0.0;
  for (int i = 1; i < grid.dims[0] - 1; ++i)
    for (int j = 1; j < grid.dims[1] - 1; ++j)
      for (int k = 1; k < grid.dims[2] - 1; ++k) {
        const double div = (grid.values[grid.index(i + 1, j, k)][0] -
                            grid.values[grid.index(i - 1, j, k)][0] +
                            grid.values[grid.index(i, j + 1, k)][1] -
                            grid.values[grid.index(i, j - 1, k)][1] +
                            grid.values[grid.index(i, j, k + 1)][2] -
                            grid.values[grid.index(i, j, k - 1)][2]) *
                           inv2h;
        worst = std::max(worst, std::abs(div));
      }
  return worst;
}

double boundary_max_abs(const FieldGrid& grid) {
  validate_grid_shape(grid);
  double worst = 0.0;
  for (int i = 0; i < grid.dims[0]; ++i)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int k = 0; k < grid.dims[2]; ++k) {
        const bool on_boundary = i == 0 || j == 0 || k == 0 || i == grid.dims[0] - 1 ||
                                 j == grid.dims[1] - 1 || k == grid.dims[2] - 1;
        if (on_boundary) worst = std::max(worst, norm3(grid.values[grid.index(i, j, k)]));
      }
  return worst;
}

double local_energy(const FieldGrid& grid, double beta, const PauliVillarsScheme& scheme,
                    const QuadratureConfig& cfg, const SeriesPolicy& pol, int threads,
                    LocalEnergyStats* stats) {
  validate_grid_shape(grid);
  if (!(beta > 0.0)) throw DomainError("local_energy requires beta > 0");
  threads = std::max(threads, 1);

  const std::size_t n = grid.values.size();
  std::vector<double> cell(n, 0.0);
  std::vector<unsigned char> clipped(n, 0);
  std::vector<unsigned char> converged(n, 1);

  auto work = [&](std::size_t lo, std::size_t hi, std::exception_ptr& eptr) noexcept {
    try {
      for (std::size_t idx = lo; idx < hi; ++idx) {
        const double a = norm3(grid.values[idx]);
        if (a == 0.0) continue;
        const DensityPoint p = total_density(a, beta, scheme, cfg, pol);
        cell[idx] = p.total;
        clipped[idx] = p.extrapolated ? 1 : 0;
        converged[idx] = p.converged ? 1 : 0;
      }
    } catch (...) {
      eptr = std::current_exception();
    }
  };

  if (threads == 1 || n < 2) {
    std::exception_ptr eptr;
    work(0, n, eptr);
    if (eptr) std::rethrow_exception(eptr);
  } else {
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(lo + chunk, n);
      pool.emplace_back(work, lo, hi, std::ref(errors[w]));
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Index-ordered reduction keeps the sum independent of thread count.
  double energy = 0.0;
  long long n_clipped = 0;
  bool all_converged = true;
  for (std::size_t idx = 0; idx < n; ++idx) {
    energy += cell[idx];
    n_clipped += clipped[idx];
    all_converged = all_converged && converged[idx];
  }
  const double h3 = grid.spacing * grid.spacing * grid.spacing;
  if (stats) {
    stats->cells_clipped = n_clipped;
    stats->converged = all_converged;
  }
  return energy * h3;
}

FieldGrid resample(const FieldGrid& grid, double epsilon) {
  validate_grid_shape(grid);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("resample requires epsilon > 0");

  FieldGrid out;
  out.spacing = grid.spacing;
  for (int c = 0; c < 3; ++c) {
    const int nd = static_cast<int>(std::ceil(grid.dims[c] / epsilon));
    if (nd < 3)
      throw ResampleError("resampled grid would have fewer than 3 cells along an axis");
    out.dims[c] = nd;
    out.origin[c] = grid.origin[c] / epsilon;
  }
  out.values.resize(static_cast<std::size_t>(out.dims[0]) * out.dims[1] * out.dims[2]);

  for (int i = 0; i < out.dims[0]; ++i)
    for (int j = 0; j < out.dims[1]; ++j)
      for (int k = 0; k < out.dims[2]; ++k) {
        // New point x maps to source position epsilon*x, i.e. fractional
        // source index epsilon * (new index).
        const std::array<double, 3> t{epsilon * i, epsilon * j, epsilon * k};
        out.values[out.index(i, j, k)] = sample_tricubic(grid, t);
      }
  return out;
}

EnergyReport scaled_energy(const FieldGrid& grid, double epsilon, double beta,
                           const PauliVillarsScheme& scheme, const QuadratureConfig& cfg,
                           const SeriesPolicy& pol, int threads) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("scaled_energy requires epsilon > 0");

  EnergyReport report;
  report.epsilon = epsilon;

  LocalEnergyStats base_stats;
  report.energy = local_energy(grid, beta, scheme, cfg, pol, threads, &base_stats);
  report.scaled_energy = report.energy / (epsilon * epsilon * epsilon);
  report.cells_clipped = base_stats.cells_clipped;
  report.max_divergence = divergence_check(grid);
  report.boundary_max = boundary_max_abs(grid);

  const FieldGrid rescaled = resample(grid, epsilon);
  LocalEnergyStats resampled_stats;
  report.resampled_energy = local_energy(rescaled, beta, scheme, cfg, pol, threads, &resampled_stats);
  const double denom = std::max(std::abs(report.scaled_energy), 1e-300);
  report.resample_rel_diff = std::abs(report.resampled_energy - report.scaled_energy) / denom;
  report.converged = base_stats.converged && resampled_stats.converged;
  return report;
}

}  // namespace magvac
