#include "vem/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vem/csv.hpp"
#include "vem/errors.hpp"

namespace vem {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key)) throw ParseError(ctx + ": missing key '" + key + "'");
  if (!j.at(key).is_number()) throw ParseError(ctx + ": key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> require_array(const json& j, const std::string& key,
                                  const std::string& ctx) {
  if (!j.contains(key)) throw ParseError(ctx + ": missing key '" + key + "'");
  if (!j.at(key).is_array()) throw ParseError(ctx + ": key '" + key + "' must be an array");
  return j.at(key).get<std::vector<double>>();
}

const char* duty_name(Duty d) {
  return d == Duty::LightDuty ? "light" : "medium_heavy";
}

Duty parse_duty(const std::string& s, const std::string& ctx) {
  if (s == "light") return Duty::LightDuty;
  if (s == "medium_heavy") return Duty::MediumHeavyDuty;
  throw ParseError(ctx + ": duty must be 'light' or 'medium_heavy', got '" + s + "'");
}

const std::vector<std::string> kSharedKeys = {"c0", "c1", "c2", "c3", "p0", "p1",
                                              "p2", "q0", "q1", "z0", "z1", "z2",
                                              "b1", "b2", "b3", "b4", "b5", "b6"};
const std::vector<std::string> kLightKeys = {"v_c", "beta", "a0", "a1", "a2", "a3", "a4"};
const std::vector<std::string> kHeavyKeys = {"h0", "h1"};

}  // namespace

SimplifiedParams parse_simplified_params(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("simplified params: ") + e.what());
  }
  const std::string ctx = "simplified params";
  SimplifiedParams p;
  if (!j.contains("name") || !j.at("name").is_string())
    throw ParseError(ctx + ": missing string key 'name'");
  p.name = j.at("name").get<std::string>();
  if (!j.contains("duty") || !j.at("duty").is_string())
    throw ParseError(ctx + ": missing string key 'duty'");
  p.duty = parse_duty(j.at("duty").get<std::string>(), ctx);

  std::set<std::string> allowed = {"name", "duty"};
  for (const auto& k : kSharedKeys) allowed.insert(k);
  const auto& duty_keys = p.duty == Duty::LightDuty ? kLightKeys : kHeavyKeys;
  const auto& other_keys = p.duty == Duty::LightDuty ? kHeavyKeys : kLightKeys;
  for (const auto& k : duty_keys) allowed.insert(k);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      std::string why = ": unknown key '" + it.key() + "'";
      for (const auto& o : other_keys)
        if (it.key() == o)
          why = ": key '" + it.key() + "' is not valid for duty '" +
                duty_name(p.duty) + "' and must be omitted";
      throw ParseError(ctx + why);
    }
  }

  double* shared[] = {&p.c0, &p.c1, &p.c2, &p.c3, &p.p0, &p.p1, &p.p2, &p.q0, &p.q1,
                      &p.z0, &p.z1, &p.z2, &p.b1, &p.b2, &p.b3, &p.b4, &p.b5, &p.b6};
  for (std::size_t i = 0; i < kSharedKeys.size(); ++i)
    *shared[i] = require_number(j, kSharedKeys[i], ctx);
  if (p.duty == Duty::LightDuty) {
    p.v_c = require_number(j, "v_c", ctx);
    p.beta = require_number(j, "beta", ctx);
    p.a0 = require_number(j, "a0", ctx);
    p.a1 = require_number(j, "a1", ctx);
    p.a2 = require_number(j, "a2", ctx);
    p.a3 = require_number(j, "a3", ctx);
    p.a4 = require_number(j, "a4", ctx);
  } else {
    p.h0 = require_number(j, "h0", ctx);
    p.h1 = require_number(j, "h1", ctx);
  }
  p.validate();
  return p;
}

SimplifiedParams load_simplified_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_simplified_params(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string simplified_params_to_json(const SimplifiedParams& p) {
  json j;
  j["name"] = p.name;
  j["duty"] = duty_name(p.duty);
  if (p.duty == Duty::LightDuty) {
    j["v_c"] = p.v_c;
    j["beta"] = p.beta;
    j["a0"] = p.a0;
    j["a1"] = p.a1;
    j["a2"] = p.a2;
    j["a3"] = p.a3;
    j["a4"] = p.a4;
  } else {
    j["h0"] = p.h0;
    j["h1"] = p.h1;
  }
  j["c0"] = p.c0;
  j["c1"] = p.c1;
  j["c2"] = p.c2;
  j["c3"] = p.c3;
  j["p0"] = p.p0;
  j["p1"] = p.p1;
  j["p2"] = p.p2;
  j["q0"] = p.q0;
  j["q1"] = p.q1;
  j["z0"] = p.z0;
  j["z1"] = p.z1;
  j["z2"] = p.z2;
  j["b1"] = p.b1;
  j["b2"] = p.b2;
  j["b3"] = p.b3;
  j["b4"] = p.b4;
  j["b5"] = p.b5;
  j["b6"] = p.b6;
  return j.dump(2) + "\n";
}

void save_simplified_params(const SimplifiedParams& params,
                            const std::filesystem::path& path) {
  csv::write_file_atomic(path, simplified_params_to_json(params));
}

namespace {

json grid1d_to_json(const Grid1D& g) {
  return json{{"x", g.xs()}, {"y", g.ys()}};
}

Grid1D grid1d_from_json(const json& j, const std::string& ctx) {
  return Grid1D(require_array(j, "x", ctx), require_array(j, "y", ctx), ctx);
}

json grid2d_to_json(const Grid2D& g) {
  return json{{"x", g.xs()}, {"y", g.ys()}, {"values", g.values()}};
}

Grid2D grid2d_from_json(const json& j, const std::string& ctx) {
  if (!j.contains("values") || !j.at("values").is_array())
    throw ParseError(ctx + ": missing 2-D 'values' array");
  return Grid2D(require_array(j, "x", ctx), require_array(j, "y", ctx),
                j.at("values").get<std::vector<std::vector<double>>>(), ctx);
}

json poly2d_to_json(const Poly2D& p) {
  std::vector<std::vector<double>> rows(p.coeffs().rows());
  for (Eigen::Index i = 0; i < p.coeffs().rows(); ++i) {
    rows[i].resize(p.coeffs().cols());
    for (Eigen::Index j = 0; j < p.coeffs().cols(); ++j) rows[i][j] = p.coeffs()(i, j);
  }
  return json{{"deg_x", p.deg_x()}, {"deg_y", p.deg_y()}, {"coeffs", rows}};
}

Poly2D poly2d_from_json(const json& j, const std::string& ctx) {
  int dx = static_cast<int>(require_number(j, "deg_x", ctx));
  int dy = static_cast<int>(require_number(j, "deg_y", ctx));
  if (!j.contains("coeffs")) throw ParseError(ctx + ": missing 'coeffs'");
  auto rows = j.at("coeffs").get<std::vector<std::vector<double>>>();
  Eigen::MatrixXd c(dx + 1, dy + 1);
  if (static_cast<int>(rows.size()) != dx + 1)
    throw ParseError(ctx + ": coefficient row count != deg_x + 1");
  for (int i = 0; i <= dx; ++i) {
    if (static_cast<int>(rows[i].size()) != dy + 1)
      throw ParseError(ctx + ": coefficient column count != deg_y + 1");
    for (int jj = 0; jj <= dy; ++jj) c(i, jj) = rows[i][jj];
  }
  return Poly2D(dx, dy, std::move(c));
}

}  // namespace

SemiPrincipledVehicle parse_vehicle(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("vehicle file: ") + e.what());
  }
  const std::string ctx = "vehicle file";
  SemiPrincipledVehicle v;
  if (j.contains("name")) v.name = j.at("name").get<std::string>();
  std::string trans = j.value("transmission", std::string("automatic"));
  if (trans == "automatic")
    v.transmission = Transmission::Automatic;
  else if (trans == "manual")
    v.transmission = Transmission::Manual;
  else
    throw ParseError(ctx + ": transmission must be 'automatic' or 'manual'");

  for (const char* section :
       {"principled_constants", "empirical_constants", "principled_maps",
        "empirical_maps"})
    if (!j.contains(section))
      throw ParseError(ctx + ": missing section '" + std::string(section) + "'");

  {
    const json& c = j.at("principled_constants");
    const std::string cx = "principled_constants";
    v.constants.m_vehicle = require_number(c, "m_vehicle", cx);
    v.constants.m_general = require_array(c, "m_general", cx);
    v.constants.r_tire = require_number(c, "r_tire", cx);
    v.constants.R_a = require_number(c, "R_a", cx);
    v.constants.R_r = require_number(c, "R_r", cx);
    v.constants.R_g = require_number(c, "R_g", cx);
    v.constants.d_r = require_number(c, "d_r", cx);
    v.constants.g_r = require_array(c, "g_r", cx);
    v.constants.N_max = require_number(c, "N_max", cx);
    v.constants.N_min = require_number(c, "N_min", cx);
    if (c.contains("g_const")) v.constants.g_const = c.at("g_const").get<double>();
  }
  {
    const json& e = j.at("empirical_constants");
    const std::string cx = "empirical_constants";
    v.empirical.T_min = require_number(e, "T_min", cx);
    v.empirical.f_idle = require_number(e, "f_idle", cx);
    v.empirical.v_c = require_number(e, "v_c", cx);
    v.empirical.F_wc = require_number(e, "F_wc", cx);
    if (e.contains("downshift_speeds"))
      v.empirical.downshift_speeds = require_array(e, "downshift_speeds", cx);
    if (e.contains("torque_correction")) {
      const json& tc = e.at("torque_correction");
      v.empirical.torque_correction.slope = require_number(tc, "slope", cx);
      v.empirical.torque_correction.intercept = tc.value("intercept", 0.0);
    }
  }
  {
    const json& m = j.at("principled_maps");
    const std::string cx = "principled_maps";
    if (m.contains("K_upshift"))
      v.pmaps.K_upshift = grid2d_from_json(m.at("K_upshift"), cx + ".K_upshift");
    v.pmaps.T_max_of_N = grid1d_from_json(m.at("T_max_of_N"), cx + ".T_max_of_N");
    v.pmaps.T_wmax_of_v = grid1d_from_json(m.at("T_wmax_of_v"), cx + ".T_wmax_of_v");
    if (!m.contains("T_wmax_of_v_k") || !m.at("T_wmax_of_v_k").is_array())
      throw ParseError(cx + ": missing per-gear 'T_wmax_of_v_k' array");
    int k = 0;
    for (const auto& g : m.at("T_wmax_of_v_k"))
      v.pmaps.T_wmax_of_v_k.push_back(
          grid1d_from_json(g, cx + ".T_wmax_of_v_k[" + std::to_string(k++) + "]"));
    if (m.contains("V_upshift"))
      for (const auto& g : m.at("V_upshift"))
        v.pmaps.V_upshift.push_back(grid1d_from_json(g, cx + ".V_upshift"));
    if (m.contains("V_downshift"))
      for (const auto& g : m.at("V_downshift"))
        v.pmaps.V_downshift.push_back(grid1d_from_json(g, cx + ".V_downshift"));
    if (m.contains("alpha_s")) v.pmaps.alpha_s = m.at("alpha_s").get<double>();
  }
  {
    const json& m = j.at("empirical_maps");
    const std::string cx = "empirical_maps";
    v.emaps.fuel_poly = poly2d_from_json(m.at("fuel_poly"), cx + ".fuel_poly");
    const json& es = m.at("engine_speed");
    v.emaps.speed_gear1 = poly2d_from_json(es.at("gear1"), cx + ".engine_speed.gear1");
    for (const auto& lm : es.at("locked"))
      v.emaps.speed_locked.push_back(LinearMap{require_number(lm, "c0", cx),
                                               require_number(lm, "c1", cx)});
    const json& et = m.at("engine_torque");
    const json& h = et.at("gear1");
    v.emaps.torque_gear1 =
        HingeSurface{require_number(h, "c0", cx), require_number(h, "cx", cx),
                     require_number(h, "cy", cx), require_number(h, "h", cx),
                     require_number(h, "phi", cx), require_number(h, "r", cx)};
    for (const auto& pm : et.at("locked"))
      v.emaps.torque_locked.push_back(PlaneMap{require_number(pm, "c0", cx),
                                               require_number(pm, "cx", cx),
                                               require_number(pm, "cy", cx)});
  }
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    v.weights.w_T = w.value("w_T", v.weights.w_T);
    v.weights.w_N = w.value("w_N", v.weights.w_N);
    v.weights.w_F = w.value("w_F", v.weights.w_F);
    v.weights.w_g = w.value("w_g", v.weights.w_g);
  }
  if (j.contains("manual_penalty_rate"))
    v.manual_penalty_rate = j.at("manual_penalty_rate").get<double>();

  v.validate();
  return v;
}

SemiPrincipledVehicle load_vehicle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_vehicle(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string vehicle_to_json(const SemiPrincipledVehicle& v) {
  json j;
  j["name"] = v.name;
  j["transmission"] =
      v.transmission == Transmission::Automatic ? "automatic" : "manual";
  j["principled_constants"] = {
      {"m_vehicle", v.constants.m_vehicle}, {"m_general", v.constants.m_general},
      {"r_tire", v.constants.r_tire},       {"R_a", v.constants.R_a},
      {"R_r", v.constants.R_r},             {"R_g", v.constants.R_g},
      {"d_r", v.constants.d_r},             {"g_r", v.constants.g_r},
      {"N_max", v.constants.N_max},         {"N_min", v.constants.N_min},
      {"g_const", v.constants.g_const}};
  j["empirical_constants"] = {
      {"T_min", v.empirical.T_min},
      {"f_idle", v.empirical.f_idle},
      {"v_c", v.empirical.v_c},
      {"F_wc", v.empirical.F_wc},
      {"downshift_speeds", v.empirical.downshift_speeds},
      {"torque_correction",
       {{"slope", v.empirical.torque_correction.slope},
        {"intercept", v.empirical.torque_correction.intercept}}}};
  json pm;
  if (!v.pmaps.K_upshift.values().empty())
    pm["K_upshift"] = grid2d_to_json(v.pmaps.K_upshift);
  pm["T_max_of_N"] = grid1d_to_json(v.pmaps.T_max_of_N);
  pm["T_wmax_of_v"] = grid1d_to_json(v.pmaps.T_wmax_of_v);
  pm["T_wmax_of_v_k"] = json::array();
  for (const auto& g : v.pmaps.T_wmax_of_v_k) pm["T_wmax_of_v_k"].push_back(grid1d_to_json(g));
  if (!v.pmaps.V_upshift.empty()) {
    pm["V_upshift"] = json::array();
    for (const auto& g : v.pmaps.V_upshift) pm["V_upshift"].push_back(grid1d_to_json(g));
    pm["V_downshift"] = json::array();
    for (const auto& g : v.pmaps.V_downshift) pm["V_downshift"].push_back(grid1d_to_json(g));
    pm["alpha_s"] = v.pmaps.alpha_s;
  }
  j["principled_maps"] = pm;
  json locked_speed = json::array();
  for (const auto& m : v.emaps.speed_locked)
    locked_speed.push_back({{"c0", m.c0}, {"c1", m.c1}});
  json locked_torque = json::array();
  for (const auto& m : v.emaps.torque_locked)
    locked_torque.push_back({{"c0", m.c0}, {"cx", m.cx}, {"cy", m.cy}});
  j["empirical_maps"] = {
      {"fuel_poly", poly2d_to_json(v.emaps.fuel_poly)},
      {"engine_speed",
       {{"gear1", poly2d_to_json(v.emaps.speed_gear1)}, {"locked", locked_speed}}},
      {"engine_torque",
       {{"gear1",
         {{"c0", v.emaps.torque_gear1.c0},
          {"cx", v.emaps.torque_gear1.cx},
          {"cy", v.emaps.torque_gear1.cy},
          {"h", v.emaps.torque_gear1.h},
          {"phi", v.emaps.torque_gear1.phi},
          {"r", v.emaps.torque_gear1.r}}},
        {"locked", locked_torque}}}};
  j["weights"] = {{"w_T", v.weights.w_T},
                  {"w_N", v.weights.w_N},
                  {"w_F", v.weights.w_F},
                  {"w_g", v.weights.w_g}};
  j["manual_penalty_rate"] = v.manual_penalty_rate;
  return j.dump(2) + "\n";
}

void save_vehicle(const SemiPrincipledVehicle& vehicle,
                  const std::filesystem::path& path) {
  csv::write_file_atomic(path, vehicle_to_json(vehicle));
}

std::string fit_report_to_json(const FitReport& report) {
  json j;
  j["duty"] = duty_name(report.duty);
  j["v_c"] = report.v_c;
  j["steps"] = json::array();
  for (const auto& s : report.steps)
    j["steps"].push_back({{"step", s.step},
                          {"rms", s.rms},
                          {"active_constraints", s.active_constraints},
                          {"grid_points", s.grid_points},
                          {"used_points", s.used_points},
                          {"excluded_infeasible", s.excluded_infeasible},
                          {"excluded_fuel_cut", s.excluded_fuel_cut}});
  return j.dump(2) + "\n";
}

ModelFileKind sniff_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string first;
  std::getline(in, first);
  if (first.rfind("# vem grid dump", 0) == 0) return ModelFileKind::GridDump;
  in.seekg(0);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception&) {
    return ModelFileKind::Unknown;
  }
  if (j.contains("duty")) return ModelFileKind::Simplified;
  if (j.contains("principled_constants")) return ModelFileKind::SemiPrincipled;
  return ModelFileKind::Unknown;
}

}  // namespace vem
