#pragma once

// Hand-built vehicles with analytic maps. The map values are simple enough to
// recompute in straight-line test oracles without going through the library's
// interpolation or polynomial classes.

#include <vector>

#include "vem/semi_principled.hpp"

namespace vemtest {

inline vem::SemiPrincipledVehicle make_synthetic_vehicle(
    int gears = 4, vem::Transmission transmission = vem::Transmission::Automatic) {
  using namespace vem;
  SemiPrincipledVehicle v;
  v.name = "synthetic-" + std::to_string(gears) + "g";
  v.transmission = transmission;

  const std::vector<double> all_ratios = {3.9, 2.3, 1.45, 1.0};
  const std::vector<double> all_masses = {1560, 1540, 1525, 1515};
  v.constants.m_vehicle = 1500;
  v.constants.r_tire = 0.3;
  v.constants.R_a = 0.42;
  v.constants.R_r = 1.1;
  v.constants.R_g = 110;
  v.constants.d_r = 3.6;
  v.constants.N_max = 600;
  v.constants.N_min = 80;
  for (int k = 0; k < gears; ++k) {
    v.constants.g_r.push_back(all_ratios[k]);
    v.constants.m_general.push_back(all_masses[k]);
  }

  v.empirical.T_min = 18;
  v.empirical.f_idle = 0.22;
  v.empirical.v_c = 5.5;
  v.empirical.F_wc = -60;
  for (int k = 1; k < gears; ++k)
    v.empirical.downshift_speeds.push_back(3.5 + 5.5 * (k - 1));
  v.empirical.torque_correction = {11.0, 0.0};

  // T_wmax(v) = 3700 - 20 v on [0, 40]: dominates every per-gear maximum.
  {
    std::vector<double> xs, ys;
    for (double x = 0; x <= 40.0 + 1e-9; x += 5.0) {
      xs.push_back(x);
      ys.push_back(3700.0 - 20.0 * x);
    }
    v.pmaps.T_wmax_of_v = Grid1D(xs, ys, "T_wmax_of_v");
  }
  // Per-gear wheel-torque cap: 250 g_r d_r (1 - 0.2 v / 40), linear in v.
  for (int k = 0; k < gears; ++k) {
    std::vector<double> xs, ys;
    double base = 250.0 * v.constants.g_r[k] * v.constants.d_r;
    for (double x = 0; x <= 40.0 + 1e-9; x += 10.0) {
      xs.push_back(x);
      ys.push_back(base * (1.0 - 0.2 * x / 40.0));
    }
    v.pmaps.T_wmax_of_v_k.emplace_back(xs, ys, "T_wmax_k");
  }
  v.pmaps.T_max_of_N =
      Grid1D({80, 200, 350, 500, 600}, {230, 260, 255, 235, 205}, "T_max_of_N");

  if (transmission == vem::Transmission::Automatic) {
    std::vector<double> alphas = {0.0, 0.3, 0.6, 1.0};
    std::vector<double> speeds = {0, 4, 8, 14, 20, 28, 40};
    std::vector<std::vector<double>> cells = {
        {1, 2, 3, 4, 4, 4, 4},
        {1, 1, 2, 3, 4, 4, 4},
        {1, 1, 2, 2, 3, 4, 4},
        {1, 1, 1, 2, 3, 3, 4},
    };
    for (auto& row : cells)
      for (auto& g : row) g = std::min(g, static_cast<double>(gears));
    v.pmaps.K_upshift = Grid2D(alphas, speeds, cells, "K_upshift");
  } else {
    std::vector<double> alphas = {0.0, 0.5, 1.0};
    std::vector<std::vector<double>> up = {
        {4, 6, 9}, {9, 12, 16}, {15, 19, 24}, {22, 26, 32}};
    std::vector<std::vector<double>> down = {
        {0, 0, 0}, {3, 4, 6}, {8, 10, 13}, {13, 16, 20}};
    for (int k = 0; k < gears; ++k) {
      v.pmaps.V_upshift.emplace_back(alphas, up[k], "V_upshift");
      v.pmaps.V_downshift.emplace_back(alphas, down[k], "V_downshift");
    }
    v.pmaps.alpha_s = 0.12;
  }

  // fuel(N, T) = 0.08 + 1e-3 N + 3e-3 T + 1.3e-5 N T + 4e-7 T^2 + 1e-9 T^3 + 2e-8 N^2
  {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 4);
    c(0, 0) = 0.08;
    c(1, 0) = 1.0e-3;
    c(0, 1) = 3.0e-3;
    c(1, 1) = 1.3e-5;
    c(0, 2) = 4.0e-7;
    c(0, 3) = 1.0e-9;
    c(2, 0) = 2.0e-8;
    v.emaps.fuel_poly = Poly2D(2, 3, c);
  }
  // Gear-1 engine speed: open-converter coupling of output speed and force.
  {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 3);
    c(0, 0) = 90.0;
    c(1, 0) = 3.2;
    c(0, 1) = 4.0e-3;
    c(2, 0) = 1.0e-4;
    c(1, 1) = 2.0e-6;
    c(3, 0) = 5.0e-8;
    c(0, 2) = 1.0e-9;
    v.emaps.speed_gear1 = Poly2D(3, 2, c);
  }
  for (int k = 1; k < gears; ++k)
    v.emaps.speed_locked.push_back({0.0, v.constants.g_r[k]});

  v.emaps.torque_gear1 = HingeSurface{15.0, 0.012, 0.052, 0.018, 1.521, 260.0};
  for (int k = 1; k < gears; ++k)
    v.emaps.torque_locked.push_back(
        {0.0, 0.0, v.constants.r_tire / (v.constants.g_r[k] * v.constants.d_r)});

  return v;
}

}  // namespace vemtest
