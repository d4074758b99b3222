#include "floerloops/floerloops.hpp"

#include <gtest/gtest.h>

using namespace floerloops;

namespace {

RunConfig small_config(Twist t = Twist::none) {
  RunConfig cfg;
  cfg.geometry.geometry.fibers = {Rational(0), Rational(1, 2)};
  cfg.geometry.winding_bound = 2;
  cfg.geometry.max_d = 3;
  cfg.twist = t;
  return cfg;
}

const Report& find(const std::vector<Report>& rs, const std::string& check) {
  for (const auto& r : rs)
    if (r.check == check) return r;
  throw Error("missing report " + check);
}

}  // namespace

TEST(Pipeline, DefaultRunPasses) {
  auto reports = check_all_geometry(small_config());
  ASSERT_EQ(reports.size(), 7u);
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.check << " " << r.witness.dump();
}

TEST(Pipeline, ConstantTwistPasses) { EXPECT_TRUE(all_passed(check_all_geometry(small_config(Twist::constant)))); }

TEST(Pipeline, ParityTwistFails) {
  auto reports = check_all_geometry(small_config(Twist::winding_parity));
  EXPECT_FALSE(find(reports, "check_ainfty").passed);
  EXPECT_FALSE(find(reports, "fundamental_chains").passed);
  EXPECT_FALSE(find(reports, "check_functor").passed);
}

TEST(Pipeline, EachMutationIsCaught) {
  const std::map<std::string, std::string> caught_by{{"mu2_sign", "check_ainfty"},
                                                     {"functor_zero", "check_functor"},
                                                     {"flat_sign", "fundamental_chains"},
                                                     {"path_product_sign", "validate_path_model"}};
  for (const auto& name : mutation_names()) {
    auto cfg = small_config();
    cfg.mutate = name;
    auto reports = check_all_geometry(cfg);
    EXPECT_FALSE(all_passed(reports)) << name;
    const auto& r = find(reports, caught_by.at(name));
    EXPECT_FALSE(r.passed) << name;
    EXPECT_FALSE(r.witness.is_null()) << name;
  }
}

TEST(Pipeline, ReportsAreDeterministic) {
  auto a = reports_to_json(check_all_geometry(small_config()), false).dump(2);
  auto b = reports_to_json(check_all_geometry(small_config()), false).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("seconds"), std::string::npos);
  EXPECT_NE(reports_to_json(check_all_geometry(small_config()), true).dump().find("seconds"), std::string::npos);
}

TEST(Pipeline, BundleReproducesGeometryReports) {
  for (Twist t : {Twist::none, Twist::constant, Twist::winding_parity}) {
    auto cfg = small_config(t);
    Bundle b = bundle_from_json(bundle_to_json(build_bundle(cfg)));
    EXPECT_EQ(bundle_to_json(b), bundle_to_json(build_bundle(cfg)));
    RunConfig bcfg;
    bcfg.geometry = b.config;
    bcfg.twist = b.twist;
    EXPECT_EQ(reports_to_json(check_all_bundle(b, bcfg), false), reports_to_json(check_all_geometry(cfg), false))
        << to_string(t);
  }
}

TEST(Pipeline, BundleMutationsAreCaught) {
  Bundle b = build_bundle(small_config());
  for (const auto& name : mutation_names()) {
    RunConfig cfg;
    cfg.geometry = b.config;
    cfg.mutate = name;
    auto bundle_reports = check_all_bundle(b, cfg);
    auto geo = small_config();
    geo.mutate = name;
    EXPECT_EQ(reports_to_json(bundle_reports, false), reports_to_json(check_all_geometry(geo), false)) << name;
  }
}

TEST(Pipeline, ConfigValidation) {
  auto cfg = small_config();
  cfg.geometry.max_d = 5;
  EXPECT_THROW(validate_run_config(cfg), Error);
  cfg = small_config();
  cfg.geometry.geometry.fibers.clear();
  EXPECT_THROW(validate_run_config(cfg), Error);
  cfg = small_config();
  cfg.geometry.winding_bound = 0;
  EXPECT_THROW(validate_run_config(cfg), Error);
  cfg = small_config();
  cfg.mutate = "everything";
  EXPECT_THROW(validate_run_config(cfg), Error);
}

TEST(Pipeline, BundleSchemaChecked) {
  Json j = bundle_to_json(build_bundle(small_config()));
  EXPECT_TRUE(is_bundle(j));
  j["schema_version"] = 99;
  EXPECT_THROW(bundle_from_json(j), Error);
  EXPECT_FALSE(is_bundle(Json::object()));
}
