#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "vem/csv.hpp"
#include "vem/errors.hpp"
#include "vem/grid_export.hpp"
#include "vem/json_io.hpp"

using namespace vem;
namespace fs = std::filesystem;

TEST_CASE("csv table reading and error rows") {
  fs::path p = fs::temp_directory_path() / "vem_table.csv";
  {
    std::ofstream out(p);
    out << "# comment\na,b\n1,2\n3,4\n";
  }
  csv::Table t = csv::read_table(p);
  CHECK(t.header.size() == 2);
  CHECK(t.column("b") == 1);
  CHECK(t.column("missing") == -1);
  CHECK(t.rows.size() == 2);
  CHECK(t.rows[1][0] == 3.0);

  {
    std::ofstream out(p);
    out << "a,b\n1,2\n3\n";
  }
  try {
    csv::read_table(p);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 2);
  }

  {
    std::ofstream out(p);
    out << "a,b\n1,nope\n";
  }
  CHECK_THROWS_AS(csv::read_table(p), ParseError);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.0, 1.0, -2.5, 3.189e-5, 1.0 / 3.0, 1e300})
    CHECK(std::stod(csv::format_double(v)) == v);
}

TEST_CASE("atomic write leaves no temporary behind") {
  fs::path p = fs::temp_directory_path() / "vem_atomic.txt";
  csv::write_file_atomic(p, "payload");
  std::ifstream in(p);
  std::string content;
  std::getline(in, content);
  CHECK(content == "payload");
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST_CASE("grid dump: node exactness and csv round trip") {
  SimplifiedParams params =
      load_simplified_params(std::string(VEM_DATA_DIR) + "/vehicles/compact_sedan.json");
  ModelOracle oracle = make_oracle(params);

  GridSpec spec;
  spec.n_v = 15;
  spec.n_a = 13;
  spec.n_theta = 5;
  GridDump dump = export_grid(oracle, spec);
  CHECK(dump.size() == 15u * 13u * 5u);

  // Node queries reproduce node values exactly.
  for (std::size_t i = 0; i < dump.v_axis.size(); i += 3)
    for (std::size_t j = 0; j < dump.a_axis.size(); j += 4)
      for (std::size_t k = 0; k < dump.theta_axis.size(); k += 2) {
        OracleSample s =
            dump.interpolate(dump.v_axis[i], dump.a_axis[j], dump.theta_axis[k]);
        CHECK(s.fuel == dump.fuel[dump.index(i, j, k)]);
        CHECK(s.feasible == (dump.feasible[dump.index(i, j, k)] != 0));
      }

  fs::path p = fs::temp_directory_path() / "vem_dump.csv";
  save_grid_dump(dump, p);
  GridDump loaded = load_grid_dump(p);
  REQUIRE(loaded.size() == dump.size());
  CHECK(loaded.v_axis == dump.v_axis);
  CHECK(loaded.a_axis == dump.a_axis);
  CHECK(loaded.theta_axis == dump.theta_axis);
  CHECK(loaded.fuel == dump.fuel);
  CHECK(loaded.feasible == dump.feasible);

  // Mid-cell trilinear value agrees with a hand-computed blend.
  double v_mid = 0.5 * (dump.v_axis[3] + dump.v_axis[4]);
  OracleSample via_loader = make_oracle(std::move(loaded))(v_mid, dump.a_axis[2],
                                                           dump.theta_axis[1]);
  double expected = 0.5 * (dump.fuel[dump.index(3, 2, 1)] + dump.fuel[dump.index(4, 2, 1)]);
  CHECK(via_loader.fuel == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("model file sniffing") {
  fs::path dir = fs::temp_directory_path();
  fs::path sp = dir / "vem_sniff_simplified.json";
  csv::write_file_atomic(sp, simplified_params_to_json(load_simplified_params(
                                 std::string(VEM_DATA_DIR) + "/vehicles/class4_pnd.json")));
  CHECK(sniff_model_file(sp) == ModelFileKind::Simplified);

  fs::path gp = dir / "vem_sniff_dump.csv";
  {
    std::ofstream out(gp);
    out << "# vem grid dump v1\n";
  }
  CHECK(sniff_model_file(gp) == ModelFileKind::GridDump);

  fs::path up = dir / "vem_sniff_unknown.txt";
  {
    std::ofstream out(up);
    out << "not a model\n";
  }
  CHECK(sniff_model_file(up) == ModelFileKind::Unknown);
}
