#include "vem/grid_export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "vem/csv.hpp"
#include "vem/errors.hpp"

namespace vem {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw ConfigError("grid axis needs at least 2 nodes");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

// Left cell index and interpolation weight, clamped to the grid.
std::pair<std::size_t, double> locate(const std::vector<double>& ax, double q) {
  if (q <= ax.front()) return {0, 0.0};
  if (q >= ax.back()) return {ax.size() - 2, 1.0};
  auto it = std::upper_bound(ax.begin(), ax.end(), q);
  std::size_t i = static_cast<std::size_t>(it - ax.begin()) - 1;
  i = std::min(i, ax.size() - 2);
  return {i, (q - ax[i]) / (ax[i + 1] - ax[i])};
}

}  // namespace

OracleSample GridDump::interpolate(double v, double a, double theta) const {
  auto [i, tx] = locate(v_axis, v);
  auto [j, ty] = locate(a_axis, a);
  auto [k, tz] = locate(theta_axis, theta);
  double f = 0.0, feas = 0.0;
  for (int di = 0; di <= 1; ++di)
    for (int dj = 0; dj <= 1; ++dj)
      for (int dk = 0; dk <= 1; ++dk) {
        double w = (di ? tx : 1 - tx) * (dj ? ty : 1 - ty) * (dk ? tz : 1 - tz);
        if (w == 0.0) continue;
        std::size_t idx = index(i + di, j + dj, k + dk);
        f += w * fuel[idx];
        feas += w * static_cast<double>(feasible[idx]);
      }
  return {f, feas >= 0.5};
}

GridDump export_grid(const ModelOracle& oracle, const GridSpec& spec) {
  GridDump d;
  d.v_axis = linspace(spec.v_lo, spec.v_hi, spec.n_v);
  d.a_axis = linspace(spec.a_lo, spec.a_hi, spec.n_a);
  d.theta_axis = linspace(spec.theta_lo, spec.theta_hi, spec.n_theta);
  d.fuel.resize(d.size());
  d.feasible.resize(d.size());
  for (std::size_t i = 0; i < d.v_axis.size(); ++i)
    for (std::size_t j = 0; j < d.a_axis.size(); ++j)
      for (std::size_t k = 0; k < d.theta_axis.size(); ++k) {
        OracleSample s = oracle(d.v_axis[i], d.a_axis[j], d.theta_axis[k]);
        d.fuel[d.index(i, j, k)] = s.fuel;
        d.feasible[d.index(i, j, k)] = s.feasible ? 1 : 0;
      }
  return d;
}

std::string grid_dump_to_csv(const GridDump& d) {
  std::ostringstream out;
  out << "# vem grid dump v1\n";
  auto axis_line = [&](const char* name, const std::vector<double>& ax) {
    out << "# axis " << name << ' ' << ax.size() << ' ' << csv::format_double(ax.front())
        << ' ' << csv::format_double(ax.back()) << '\n';
  };
  axis_line("v", d.v_axis);
  axis_line("a", d.a_axis);
  axis_line("theta", d.theta_axis);
  out << "v,a,theta,fuel_rate,feasible\n";
  for (std::size_t i = 0; i < d.v_axis.size(); ++i)
    for (std::size_t j = 0; j < d.a_axis.size(); ++j)
      for (std::size_t k = 0; k < d.theta_axis.size(); ++k) {
        std::size_t idx = d.index(i, j, k);
        out << csv::format_double(d.v_axis[i]) << ',' << csv::format_double(d.a_axis[j])
            << ',' << csv::format_double(d.theta_axis[k]) << ','
            << csv::format_double(d.fuel[idx]) << ','
            << static_cast<int>(d.feasible[idx]) << '\n';
      }
  return out.str();
}

void save_grid_dump(const GridDump& dump, const std::filesystem::path& path) {
  csv::write_file_atomic(path, grid_dump_to_csv(dump));
}

GridDump load_grid_dump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# vem grid dump", 0) != 0)
    throw ParseError(path.string() + ": not a grid dump");

  GridDump d;
  std::size_t n_v = 0, n_a = 0, n_theta = 0;
  double lo, hi;
  for (int axis = 0; axis < 3; ++axis) {
    if (!std::getline(in, line)) throw ParseError(path.string() + ": truncated header");
    std::istringstream ss(line);
    std::string hash, kw, name;
    std::size_t n;
    if (!(ss >> hash >> kw >> name >> n >> lo >> hi) || hash != "#" || kw != "axis")
      throw ParseError(path.string() + ": bad axis declaration: " + line);
    if (name == "v") {
      n_v = n;
      d.v_axis = linspace(lo, hi, n);
    } else if (name == "a") {
      n_a = n;
      d.a_axis = linspace(lo, hi, n);
    } else if (name == "theta") {
      n_theta = n;
      d.theta_axis = linspace(lo, hi, n);
    } else {
      throw ParseError(path.string() + ": unknown axis '" + name + "'");
    }
  }
  if (!n_v || !n_a || !n_theta) throw ParseError(path.string() + ": missing axis");
  if (!std::getline(in, line) || line != "v,a,theta,fuel_rate,feasible")
    throw ParseError(path.string() + ": bad column header");

  d.fuel.resize(d.size());
  d.feasible.resize(d.size());
  long row = 0;
  for (std::size_t idx = 0; idx < d.size(); ++idx) {
    if (!std::getline(in, line))
      throw ParseError(path.string() + ": expected " + std::to_string(d.size()) +
                           " data rows",
                       row);
    ++row;
    std::istringstream ss(line);
    std::string field;
    double vals[5];
    for (int c = 0; c < 5; ++c) {
      if (!std::getline(ss, field, ','))
        throw ParseError(path.string() + ": short row", row);
      try {
        vals[c] = std::stod(field);
      } catch (const std::exception&) {
        throw ParseError(path.string() + ": bad number '" + field + "'", row);
      }
    }
    d.fuel[idx] = vals[3];
    d.feasible[idx] = vals[4] != 0.0 ? 1 : 0;
  }
  return d;
}

ModelOracle make_oracle(GridDump dump) {
  auto shared = std::make_shared<GridDump>(std::move(dump));
  return [shared](double v, double a, double theta) {
    return shared->interpolate(v, a, theta);
  };
}

}  // namespace vem
