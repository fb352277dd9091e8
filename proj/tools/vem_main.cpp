// Command-line front end: point/grid/cycle evaluation, the reduction
// pipeline, dynamometer schedules and map fits, empirical-constant
// extraction, and drive-cycle validation tables.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "vem/csv.hpp"
#include "vem/drive_cycle.hpp"
#include "vem/errors.hpp"
#include "vem/grid_export.hpp"
#include "vem/json_io.hpp"
#include "vem/map_fitting.hpp"
#include "vem/reduction_pipeline.hpp"

namespace fs = std::filesystem;
using namespace vem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitFit = 4;

void require_file(const fs::path& p) {
  if (!fs::exists(p)) throw ConfigError("no such file: " + p.string());
}

struct LoadedModel {
  enum class Kind { Simplified, SemiPrincipled, Dump } kind = Kind::Simplified;
  std::string name;
  SimplifiedParams params;
  SemiPrincipledVehicle vehicle;
  ModelOracle oracle;  // dump-backed models keep their data alive in here
};

LoadedModel load_model(const fs::path& path) {
  require_file(path);
  LoadedModel m;
  switch (sniff_model_file(path)) {
    case ModelFileKind::Simplified:
      m.kind = LoadedModel::Kind::Simplified;
      m.params = load_simplified_params(path);
      m.name = m.params.name.empty() ? path.stem().string() : m.params.name;
      for (const auto& w : m.params.warnings()) std::cerr << "warning: " << w << "\n";
      m.oracle = make_oracle(m.params);
      break;
    case ModelFileKind::SemiPrincipled:
      m.kind = LoadedModel::Kind::SemiPrincipled;
      m.vehicle = load_vehicle(path);
      m.name = m.vehicle.name.empty() ? path.stem().string() : m.vehicle.name;
      for (const auto& w : m.vehicle.validate()) std::cerr << "warning: " << w << "\n";
      m.oracle = make_oracle(m.vehicle);
      break;
    case ModelFileKind::GridDump:
      m.kind = LoadedModel::Kind::Dump;
      m.name = path.stem().string();
      m.oracle = make_oracle(load_grid_dump(path));
      break;
    default:
      throw ConfigError(path.string() + ": unrecognized model file");
  }
  return m;
}

struct EvalRow {
  double fuel = 0, power = 0;
  int feasibility = 0;
  int projected = 0;
};

EvalRow eval_model_point(const LoadedModel& m, const OperatingPoint& pt, bool project,
                         double specific_energy) {
  EvalRow r;
  if (m.kind == LoadedModel::Kind::Simplified) {
    SimplifiedEval e = eval_fuel_rate(m.params, pt, project, specific_energy);
    r.fuel = e.fuel_rate;
    r.power = e.power;
    r.feasibility = static_cast<int>(e.feasibility);
    r.projected = e.projected ? 1 : 0;
    return r;
  }
  if (pt.v < 0) {
    r.feasibility = 2;
    return r;
  }
  if (m.kind == LoadedModel::Kind::SemiPrincipled) {
    SemiOutput o = m.vehicle.transmission == Transmission::Manual
                       ? eval_manual(m.vehicle, pt)
                       : eval(m.vehicle, pt);
    r.fuel = o.fuel_rate;
    r.power = o.P_engine;
    r.feasibility = o.feasible ? 0 : 1;
    return r;
  }
  OracleSample s = m.oracle(pt.v, pt.a, pt.theta);
  double se = specific_energy > 0 ? specific_energy : kSpecificEnergySpark;
  r.fuel = s.fuel;
  r.power = s.fuel * se;
  r.feasibility = s.feasible ? 0 : 1;
  return r;
}

CycleModel as_cycle_model(const LoadedModel& m, bool project, double specific_energy) {
  return [&m, project, specific_energy](const OperatingPoint& pt) {
    EvalRow r = eval_model_point(m, pt, project, specific_energy);
    return ModelSample{r.fuel, r.feasibility == 0};
  };
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
  return s;
}

// ---- eval ----

int cmd_eval(const fs::path& vehicle_path, const fs::path& points_path,
             const fs::path& out_path, bool project, double specific_energy,
             bool export_grid_flag, const GridSpec& spec) {
  LoadedModel model = load_model(vehicle_path);

  if (export_grid_flag) {
    GridDump dump = export_grid(model.oracle, spec);
    save_grid_dump(dump, out_path);
    std::cerr << "wrote " << dump.size() << "-node grid dump to " << out_path << "\n";
    return kExitOk;
  }

  require_file(points_path);
  csv::Table table = csv::read_table(points_path);
  int cv = table.column("v"), ca = table.column("a"), cth = table.column("theta");
  if (cv < 0 || ca < 0 || cth < 0)
    throw ParseError(points_path.string() + ": header must contain v,a,theta");

  std::ostringstream out;
  out << "v,a,theta,fuel_rate,power,feasibility,projected\n";
  for (const auto& row : table.rows) {
    OperatingPoint pt{row[cv], row[ca], row[cth]};
    EvalRow r = eval_model_point(model, pt, project, specific_energy);
    out << csv::format_double(pt.v) << ',' << csv::format_double(pt.a) << ','
        << csv::format_double(pt.theta) << ',' << csv::format_double(r.fuel) << ','
        << csv::format_double(r.power) << ',' << r.feasibility << ',' << r.projected
        << '\n';
  }
  csv::write_file_atomic(out_path, out.str());
  return kExitOk;
}

// ---- fit ----

int cmd_fit(const fs::path& oracle_path, const fs::path& out_path,
            const fs::path& report_path, const std::string& name) {
  LoadedModel model = load_model(oracle_path);
  FitReport report;
  std::string fitted_name = name.empty() ? model.name + " (reduced)" : name;
  SimplifiedParams fitted = fit_model(model.oracle, &report, fitted_name);
  save_simplified_params(fitted, out_path);
  if (!report_path.empty())
    csv::write_file_atomic(report_path, fit_report_to_json(report));
  std::cerr << "fitted " << fitted_name << " ("
            << (fitted.duty == Duty::LightDuty ? "light" : "medium/heavy")
            << " duty) -> " << out_path << "\n";
  return kExitOk;
}

// ---- validate ----

struct ReferenceTraceData {
  DriveTrace trace;
  double total_fuel = 0;
  std::vector<double> speed;
};

DriveTrace load_drive_trace(const fs::path& path) {
  csv::Table t = csv::read_table(path);
  int ct = t.column("t"), cv = t.column("v"), cg = t.column("gear"), cn = t.column("N"),
      cT = t.column("T"), cf = t.column("fuel"), cF = t.column("F_wheel"),
      cs = t.column("tc_state");
  if (ct < 0 || cv < 0 || cg < 0 || cn < 0 || cT < 0 || cf < 0 || cF < 0 || cs < 0)
    throw ParseError(path.string() +
                     ": header must be t,v,gear,N,T,fuel,F_wheel,tc_state");
  DriveTrace trace;
  for (const auto& r : t.rows) {
    TracePoint p;
    p.t = r[ct];
    p.v = r[cv];
    p.gear = static_cast<int>(r[cg]);
    p.N = r[cn];
    p.T = r[cT];
    p.fuel = r[cf];
    p.F_wheel = r[cF];
    int s = static_cast<int>(r[cs]);
    if (s < 0 || s > 2) throw ParseError(path.string() + ": tc_state must be 0, 1 or 2");
    p.tc_state = static_cast<TcState>(s);
    trace.points.push_back(p);
  }
  trace.validate();
  return trace;
}

int cmd_validate(const std::vector<fs::path>& model_paths, const fs::path& reference_path,
                 const fs::path& reference_trace_path,
                 const std::vector<fs::path>& cycle_paths, std::vector<double> grades,
                 const fs::path& out_path, const fs::path& trace_dir, double window_s,
                 bool project, double specific_energy) {
  if (grades.empty()) grades = {0.0};
  std::vector<LoadedModel> models;
  for (const auto& p : model_paths) models.push_back(load_model(p));

  std::optional<LoadedModel> reference;
  std::optional<ReferenceTraceData> ref_trace;
  if (!reference_path.empty()) reference = load_model(reference_path);
  if (!reference_trace_path.empty()) {
    require_file(reference_trace_path);
    ReferenceTraceData data;
    data.trace = load_drive_trace(reference_trace_path);
    for (const auto& p : data.trace.points) data.speed.push_back(p.v);
    for (std::size_t i = 1; i < data.trace.points.size(); ++i) {
      double dt = data.trace.points[i].t - data.trace.points[i - 1].t;
      data.total_fuel +=
          0.5 * (data.trace.points[i - 1].fuel + data.trace.points[i].fuel) * dt;
    }
    ref_trace = std::move(data);
  }
  if (!reference && !ref_trace)
    throw ConfigError("validate needs --reference or --reference-trace");
  if (ref_trace && (cycle_paths.size() != 1 || grades.size() != 1))
    throw ConfigError("--reference-trace validates exactly one cycle at one grade");

  std::ostringstream out;
  out << "vehicle,model,cycle,grade,rel_error_pct,realizable\n";
  for (const auto& cycle_path : cycle_paths) {
    require_file(cycle_path);
    DriveCycle base = load_cycle(cycle_path);
    for (double grade : grades) {
      std::string warning;
      DriveCycle cycle = with_constant_grade(base, grade, &warning);
      if (!warning.empty()) std::cerr << "warning: " << warning << "\n";

      double ref_total;
      bool realizable = true;
      if (ref_trace) {
        ref_total = ref_trace->total_fuel;
        realizable = realizability(cycle, ref_trace->speed).realizable;
      } else {
        ref_total =
            integrate_fuel(as_cycle_model(*reference, project, specific_energy), cycle)
                .total_fuel_g;
      }

      std::vector<std::vector<double>> model_traces;
      for (const auto& m : models) {
        TripResult trip =
            integrate_fuel(as_cycle_model(m, project, specific_energy), cycle);
        model_traces.push_back(trip.fuel_rate);
        out << sanitize(m.name) << ',' << (ref_trace ? "reference-trace" : sanitize(reference->name))
            << ',' << cycle.name << ',' << csv::format_double(grade) << ','
            << csv::format_double(relative_error_pct(trip.total_fuel_g, ref_total))
            << ',' << (realizable ? 1 : 0) << '\n';
      }

      if (!trace_dir.empty()) {
        fs::create_directories(trace_dir);
        if (cycle.samples.size() >= 2) {
          double dt = cycle.samples[1].t - cycle.samples[0].t;
          std::ostringstream tr;
          tr << "t";
          for (const auto& m : models) tr << ",fuel_" << sanitize(m.name);
          tr << "\n";
          std::vector<std::vector<double>> averaged;
          for (const auto& series : model_traces)
            averaged.push_back(moving_average(series, dt, window_s));
          for (std::size_t i = 0; i < cycle.samples.size(); ++i) {
            tr << csv::format_double(cycle.samples[i].t);
            for (const auto& series : averaged)
              tr << ',' << csv::format_double(series[i]);
            tr << "\n";
          }
          fs::path trace_path = trace_dir / ("trace_" + sanitize(cycle.name) + "_" +
                                             csv::format_double(grade) + ".csv");
          csv::write_file_atomic(trace_path, tr.str());
        }
      }
    }
  }
  csv::write_file_atomic(out_path, out.str());
  return kExitOk;
}

// ---- cycles list ----

int cmd_cycles_list(const fs::path& dir) {
  if (!fs::exists(dir)) throw ConfigError("no such cycle directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      DriveCycle c = load_cycle(f);
      double vmax = 0;
      for (const auto& s : c.samples) vmax = std::max(vmax, s.v);
      std::cout << c.name << ": " << c.samples.size() << " samples, "
                << csv::format_double(c.duration()) << " s, v_max "
                << csv::format_double(vmax) << " m/s\n";
    } catch (const std::exception& e) {
      std::cout << f.stem().string() << ": unreadable (" << e.what() << ")\n";
    }
  }
  return kExitOk;
}

// ---- vcd schedule / fit-maps ----

int cmd_vcd_schedule(const fs::path& vehicle_path, const fs::path& out_path) {
  LoadedModel model = load_model(vehicle_path);
  if (model.kind != LoadedModel::Kind::SemiPrincipled)
    throw ConfigError("vcd schedule needs a semi-principled vehicle file");
  VcdSchedule schedule = generate_vcd_schedule(model.vehicle.constants);
  for (const auto& w : schedule.warnings) std::cerr << "warning: " << w << "\n";
  std::ostringstream out;
  out << "gear,target_speed,pedal_angle,dwell_s,capture_at_s\n";
  for (const auto& e : schedule.entries)
    out << e.gear << ',' << csv::format_double(e.target_speed) << ','
        << csv::format_double(e.pedal_angle) << ',' << csv::format_double(e.dwell_s)
        << ',' << csv::format_double(e.capture_at_s) << '\n';
  csv::write_file_atomic(out_path, out.str());
  return kExitOk;
}

std::vector<VcdSample> load_vcd_samples(const fs::path& path) {
  csv::Table t = csv::read_table(path);
  int cg = t.column("gear"), cv = t.column("v"), cp = t.column("pedal"),
      cn = t.column("N"), cT = t.column("T"), cf = t.column("fuel"),
      cno = t.column("N_output"), cF = t.column("F_wheel"), cl = t.column("tc_locked");
  if (cg < 0 || cv < 0 || cp < 0 || cn < 0 || cT < 0 || cf < 0 || cno < 0 || cF < 0 ||
      cl < 0)
    throw ParseError(path.string() +
                     ": header must be gear,v,pedal,N,T,fuel,N_output,F_wheel,tc_locked");
  std::vector<VcdSample> out;
  for (const auto& r : t.rows)
    out.push_back({static_cast<int>(r[cg]), r[cv], r[cp], r[cn], r[cT], r[cf], r[cno],
                   r[cF], r[cl] != 0.0});
  return out;
}

int cmd_vcd_fit_maps(const fs::path& samples_path, const fs::path& out_path) {
  require_file(samples_path);
  auto samples = load_vcd_samples(samples_path);
  if (samples.empty()) throw FitError("no samples to fit");
  int gears = 0;
  for (const auto& s : samples) gears = std::max(gears, s.gear);

  FuelMapFit fuel = fit_fuel_map(samples);
  std::ostringstream out;
  out << "{\n  \"fuel_poly_rms\": " << csv::format_double(fuel.rms) << ",\n";
  out << "  \"fuel_poly\": {\"deg_x\": 2, \"deg_y\": 3, \"coeffs\": [";
  for (int i = 0; i <= 2; ++i) {
    out << (i ? ", [" : "[");
    for (int j = 0; j <= 3; ++j)
      out << (j ? ", " : "") << csv::format_double(fuel.poly.coeffs()(i, j));
    out << "]";
  }
  out << "]},\n  \"engine_speed\": {";
  std::ostringstream speed_locked, torque_locked;
  SpeedMapFit sg1 = fit_engine_speed_map(samples, 1);
  TorqueMapFit tg1 = fit_engine_torque_map(samples, 1);
  for (const auto& w : tg1.warnings) std::cerr << "warning: " << w << "\n";
  out << "\"gear1\": {\"deg_x\": 3, \"deg_y\": 2, \"rms\": "
      << csv::format_double(sg1.rms) << ", \"coeffs\": [";
  for (int i = 0; i <= 3; ++i) {
    out << (i ? ", [" : "[");
    for (int j = 0; j <= 2; ++j)
      out << (j ? ", " : "") << csv::format_double(sg1.gear1.coeffs()(i, j));
    out << "]";
  }
  out << "]}, \"locked\": [";
  for (int k = 2; k <= gears; ++k) {
    SpeedMapFit f = fit_engine_speed_map(samples, k);
    out << (k > 2 ? ", " : "") << "{\"c0\": " << csv::format_double(f.locked.c0)
        << ", \"c1\": " << csv::format_double(f.locked.c1)
        << ", \"rms\": " << csv::format_double(f.rms) << "}";
  }
  out << "]},\n  \"engine_torque\": {\"gear1\": {\"c0\": "
      << csv::format_double(tg1.gear1.c0) << ", \"cx\": " << csv::format_double(tg1.gear1.cx)
      << ", \"cy\": " << csv::format_double(tg1.gear1.cy)
      << ", \"h\": " << csv::format_double(tg1.gear1.h)
      << ", \"phi\": " << csv::format_double(tg1.gear1.phi)
      << ", \"r\": " << csv::format_double(tg1.gear1.r)
      << ", \"rms\": " << csv::format_double(tg1.rms)
      << ", \"plane_rms\": " << csv::format_double(tg1.plane_rms) << "}, \"locked\": [";
  for (int k = 2; k <= gears; ++k) {
    TorqueMapFit f = fit_engine_torque_map(samples, k);
    out << (k > 2 ? ", " : "") << "{\"c0\": " << csv::format_double(f.locked.c0)
        << ", \"cx\": " << csv::format_double(f.locked.cx)
        << ", \"cy\": " << csv::format_double(f.locked.cy)
        << ", \"rms\": " << csv::format_double(f.rms) << "}";
  }
  out << "]}\n}\n";
  csv::write_file_atomic(out_path, out.str());
  return kExitOk;
}

int cmd_extract_constants(const fs::path& trace_path, const fs::path& vehicle_path,
                          const fs::path& out_path) {
  require_file(trace_path);
  DriveTrace trace = load_drive_trace(trace_path);
  ExtractionOptions options;
  std::optional<LoadedModel> vehicle;
  if (!vehicle_path.empty()) {
    vehicle = load_model(vehicle_path);
    if (vehicle->kind != LoadedModel::Kind::SemiPrincipled)
      throw ConfigError("extract-constants --vehicle needs a semi-principled file");
    const auto& v = vehicle->vehicle;
    options.d_r = v.constants.d_r;
    options.r_tire = v.constants.r_tire;
    options.gear1_torque_model = [&v](double n_output, double f_wheel) {
      return v.emaps.torque_gear1.eval(n_output, f_wheel);
    };
  }
  ExtractedConstants ec = extract_empirical_constants(trace, options);
  std::ostringstream out;
  out << "{\n";
  auto field = [&](const char* name, const std::optional<double>& v, bool comma = true) {
    out << "  \"" << name << "\": " << (v ? csv::format_double(*v) : "null")
        << (comma ? ",\n" : "\n");
  };
  field("T_min", ec.T_min);
  field("f_idle", ec.f_idle);
  field("v_c", ec.v_c);
  field("F_wc", ec.F_wc);
  out << "  \"downshift_speeds\": {";
  bool first = true;
  for (const auto& [gear, speed] : ec.downshift_speeds) {
    out << (first ? "" : ", ") << "\"" << gear << "\": " << csv::format_double(speed);
    first = false;
  }
  out << "},\n";
  out << "  \"torque_correction_slope\": "
      << (ec.torque_correction ? csv::format_double(ec.torque_correction->slope)
                               : "null")
      << ",\n  \"diagnostics\": [";
  for (std::size_t i = 0; i < ec.diagnostics.size(); ++i)
    out << (i ? ", " : "") << "\"" << ec.diagnostics[i] << "\"";
  out << "]\n}\n";
  csv::write_file_atomic(out_path, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vehicle energy model toolkit"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on points or export a grid");
  fs::path eval_vehicle, eval_points, eval_out = "eval_out.csv";
  bool eval_project = false, eval_export = false;
  double eval_se = 0.0;
  GridSpec grid_spec;
  eval_cmd->add_option("--vehicle", eval_vehicle, "model file (simplified, semi-principled, or grid dump)")->required();
  eval_cmd->add_option("--points", eval_points, "input CSV with header v,a,theta");
  eval_cmd->add_option("--out", eval_out, "output path");
  eval_cmd->add_flag("--project", eval_project, "project infeasible accelerations onto the ceiling");
  eval_cmd->add_option("--specific-energy", eval_se, "fuel specific energy, J/g (default by duty)");
  eval_cmd->add_flag("--export-grid", eval_export, "write a black-box grid dump instead of point evals");
  eval_cmd->add_option("--grid-nodes", [&grid_spec](const std::vector<std::string>& vals) {
    if (vals.size() != 3) return false;
    grid_spec.n_v = std::stoul(vals[0]);
    grid_spec.n_a = std::stoul(vals[1]);
    grid_spec.n_theta = std::stoul(vals[2]);
    return true;
  }, "grid node counts: NV NA NTHETA")->expected(3);

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "reduce an oracle to simplified parameters");
  fs::path fit_oracle, fit_out = "fitted_params.json", fit_report;
  std::string fit_name;
  fit_cmd->add_option("--vehicle", fit_oracle, "oracle source: semi-principled file or grid dump")->required();
  fit_cmd->add_option("--out", fit_out, "output parameter file");
  fit_cmd->add_option("--report", fit_report, "fit report JSON path");
  fit_cmd->add_option("--name", fit_name, "name for the fitted parameter set");

  // validate
  auto* val_cmd = app.add_subcommand("validate", "relative-error tables over drive cycles");
  std::vector<fs::path> val_models, val_cycles;
  fs::path val_reference, val_ref_trace, val_out = "validation.csv", val_trace_dir;
  std::vector<double> val_grades;
  double val_window = 20.0, val_se = 0.0;
  bool val_project = false;
  val_cmd->add_option("--vehicle", val_models, "model file(s) under test")->required();
  val_cmd->add_option("--reference", val_reference, "reference model file");
  val_cmd->add_option("--reference-trace", val_ref_trace, "externally supplied reference drive trace CSV");
  val_cmd->add_option("--cycle", val_cycles, "drive cycle CSV(s)")->required();
  val_cmd->add_option("--grade", val_grades, "constant road grades, rad (default 0)");
  val_cmd->add_option("--out", val_out, "validation report CSV");
  val_cmd->add_option("--trace-out", val_trace_dir, "directory for moving-average fuel traces");
  val_cmd->add_option("--window", val_window, "moving-average window, s (default 20)");
  val_cmd->add_flag("--project", val_project, "project infeasible points");
  val_cmd->add_option("--specific-energy", val_se, "fuel specific energy, J/g");

  // cycles list
  auto* cycles_cmd = app.add_subcommand("cycles", "drive-cycle utilities");
  auto* cycles_list = cycles_cmd->add_subcommand("list", "list bundled cycles");
  fs::path cycles_dir = "data/cycles";
  cycles_list->add_option("--dir", cycles_dir, "cycle directory (default data/cycles)");

  // vcd
  auto* vcd_cmd = app.add_subcommand("vcd", "virtual chassis dynamometer utilities");
  auto* vcd_schedule = vcd_cmd->add_subcommand("schedule", "emit the gear-by-gear test schedule");
  fs::path vcd_vehicle, vcd_out = "vcd_schedule.csv";
  vcd_schedule->add_option("--vehicle", vcd_vehicle, "semi-principled vehicle file")->required();
  vcd_schedule->add_option("--out", vcd_out, "schedule CSV path");
  auto* vcd_fit = vcd_cmd->add_subcommand("fit-maps", "fit empirical maps from captured samples");
  fs::path vcd_samples, vcd_maps_out = "fitted_maps.json";
  vcd_fit->add_option("--samples", vcd_samples, "VCD sample CSV")->required();
  vcd_fit->add_option("--out", vcd_maps_out, "fitted map JSON path");

  // extract-constants
  auto* extract_cmd = app.add_subcommand("extract-constants", "empirical constants from a drive trace");
  fs::path ex_trace, ex_vehicle, ex_out = "empirical_constants.json";
  extract_cmd->add_option("--trace", ex_trace, "drive trace CSV")->required();
  extract_cmd->add_option("--vehicle", ex_vehicle, "vehicle file supplying the gear-1 torque map");
  extract_cmd->add_option("--out", ex_out, "output JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) {
      if (!eval_export && eval_points.empty())
        throw ConfigError("eval needs --points or --export-grid");
      return cmd_eval(eval_vehicle, eval_points, eval_out, eval_project, eval_se,
                      eval_export, grid_spec);
    }
    if (fit_cmd->parsed())
      return cmd_fit(fit_oracle, fit_out, fit_report, fit_name);
    if (val_cmd->parsed())
      return cmd_validate(val_models, val_reference, val_ref_trace, val_cycles,
                          val_grades, val_out, val_trace_dir, val_window, val_project,
                          val_se);
    if (cycles_cmd->parsed() && cycles_list->parsed()) return cmd_cycles_list(cycles_dir);
    if (vcd_cmd->parsed() && vcd_schedule->parsed())
      return cmd_vcd_schedule(vcd_vehicle, vcd_out);
    if (vcd_cmd->parsed() && vcd_fit->parsed())
      return cmd_vcd_fit_maps(vcd_samples, vcd_maps_out);
    if (extract_cmd->parsed())
      return cmd_extract_constants(ex_trace, ex_vehicle, ex_out);
    std::cerr << app.help();
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return kExitFit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
