#include <gtest/gtest.h>

#include "fracvar/io.hpp"

using namespace fracvar;

namespace {

Json valid_doc() {
  return Json::parse(R"({
    "grid": {"dim": 1, "n": 256, "box_length": 20.0},
    "problem": {"s": 0.5, "c": 1.0, "nonlinearity": {"kind": "weighted_power", "ell": 1, "weight_rate": 0.5}},
    "solver": {"step": 0.05, "max_iters": 10, "tol_energy": 1e-9, "tol_residual": 1e-4, "symmetrize_every": 5,
               "seed": 3, "init": "seeded_noise", "inequality_mode": "ball", "threads": 2},
    "output": {"dir": "somewhere", "emit_profile": false, "emit_json": true}
  })");
}

}  // namespace

TEST(RunConfig, ParsesEverySection) {
  const auto rc = run_config_from_json(valid_doc());
  EXPECT_EQ(rc.solve.grid, GridSpec(1, 256, 20.0));
  EXPECT_EQ(rc.solve.spec.kind, NonlinearityKind::weighted_power);
  EXPECT_EQ(rc.solve.spec.amplitude, 1.0);
  EXPECT_DOUBLE_EQ(rc.solve.spec.K, 1.0 / 3.0);
  EXPECT_EQ(rc.solve.max_iters, 10u);
  EXPECT_EQ(rc.solve.init, InitKind::seeded_noise);
  EXPECT_EQ(rc.solve.inequality_mode, ConstraintMode::ball);
  EXPECT_EQ(rc.solve.threads, 2);
  EXPECT_EQ(rc.output.dir, "somewhere");
  EXPECT_FALSE(rc.output.emit_profile);
  EXPECT_EQ(rc.echo, valid_doc());
}

TEST(RunConfig, RejectsUnknownKeysEverywhere) {
  for (const char* path : {"/extra", "/grid/extra", "/problem/extra", "/problem/nonlinearity/extra", "/solver/extra",
                           "/output/extra"}) {
    Json doc = valid_doc();
    doc[Json::json_pointer(path)] = 1;
    EXPECT_THROW(run_config_from_json(doc), ConfigError) << path;
  }
}

TEST(RunConfig, RejectsMissingAndMistypedValues) {
  Json doc = valid_doc();
  doc["grid"].erase("n");
  EXPECT_THROW(run_config_from_json(doc), ConfigError);
  doc = valid_doc();
  doc["problem"]["s"] = "half";
  EXPECT_THROW(run_config_from_json(doc), ConfigError);
  doc = valid_doc();
  doc["solver"]["max_iters"] = -3;
  EXPECT_THROW(run_config_from_json(doc), ConfigError);
  doc = valid_doc();
  doc["grid"]["n"] = 100;
  EXPECT_THROW(run_config_from_json(doc), ConfigError);
  doc = valid_doc();
  doc["problem"]["s"] = 1.5;
  EXPECT_THROW(run_config_from_json(doc), ConfigError);
  doc = valid_doc();
  doc["solver"]["init"] = "random";
  EXPECT_THROW(run_config_from_json(doc), ConfigError);
  doc = valid_doc();
  doc["problem"]["nonlinearity"]["kind"] = "cubic";
  EXPECT_THROW(run_config_from_json(doc), ConfigError);
  EXPECT_THROW(run_config_from_text("{\"grid\": "), ConfigError);
  EXPECT_THROW(run_config_from_text("[]"), ConfigError);
}

TEST(Reports, NumbersRoundTrip) {
  const double x = 0.1 + 0.2, y = -2.0 / 3.0;
  EnergyBreakdown e{x, y, x - y, 1.0 / 7.0};
  const Json back = Json::parse(to_json(e).dump());
  EXPECT_EQ(back["kinetic"].get<double>(), x);
  EXPECT_EQ(back["potential"].get<double>(), y);
  EXPECT_EQ(back["mass"].get<double>(), 1.0 / 7.0);
  EXPECT_EQ(std::stod(format_number(y)), y);
}

TEST(Reports, CsvLayouts) {
  ScanResult scan;
  scan.rows = {{0.5, -0.25, true, 3}};
  EXPECT_EQ(scan_to_csv(scan), "c,I_c,converged\n0.5,-0.25,true\n");
  ScalingTable t;
  t.rows.push_back({2.0, {1.0, 0.5, 0.5, 1.0}, 10.0, false});
  EXPECT_EQ(scaling_to_csv(t), "lambda,kinetic,potential,total\n2,1,0.5,0.5\n");
  const GridSpec g(1, 16, 16.0);
  Field u(g);
  u[8] = 1.5;
  const std::string csv = field_to_csv(u);
  EXPECT_EQ(csv.substr(0, 4), "x,u\n");
  EXPECT_NE(csv.find("\n0,1.5\n"), std::string::npos);
}

TEST(Reports, RegimeJsonHandlesInfinity) {
  const Json j = to_json(classify_regime(1.0, 0.75, 1));
  EXPECT_TRUE(j["alpha_max_fl"].is_null());
  EXPECT_TRUE(j["alpha_max_fl_infinite"].get<bool>());
  EXPECT_EQ(j["alpha_max_corrected"].get<double>(), 3.0);
  EXPECT_EQ(j["regime"], "subcritical");
}
