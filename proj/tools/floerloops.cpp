// Command-line driver: check-all, demo-s1, export, import-model.

#include "floerloops/floerloops.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fl = floerloops;

namespace {

struct Options {
  std::string config_path;
  long long winding = -1;
  int max_d = -1;
  std::string twist = "none";
  std::string out;
  std::string mutate;
  bool timing = false;
};

fl::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fl::Error("cannot open " + path);
  try {
    return fl::Json::parse(in);
  } catch (const fl::Json::exception& e) {
    throw fl::Error("invalid JSON in " + path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fl::Error("cannot write " + path);
  out << text;
  if (!out) throw fl::Error("write to " + path + " failed");
}

fl::RunConfig run_config(const Options& o, const fl::Json* config) {
  fl::RunConfig cfg;
  if (config) cfg.geometry = fl::geometry_config_from_json(*config);
  if (o.winding >= 0) cfg.geometry.winding_bound = o.winding;
  if (o.max_d >= 0) cfg.geometry.max_d = o.max_d;
  cfg.twist = fl::twist_from_string(o.twist);
  cfg.mutate = o.mutate;
  cfg.timing = o.timing;
  fl::validate_run_config(cfg);
  return cfg;
}

int cmd_check_all(const Options& o) {
  std::optional<fl::Json> config;
  if (!o.config_path.empty()) config = read_json(o.config_path);
  std::vector<fl::Report> reports;
  bool timing = o.timing;
  if (config && fl::is_bundle(*config)) {
    fl::Bundle b = fl::bundle_from_json(*config);
    fl::RunConfig cfg;
    cfg.geometry = b.config;
    cfg.twist = b.twist;
    cfg.mutate = o.mutate;
    fl::validate_run_config(cfg);
    reports = fl::check_all_bundle(b, cfg);
  } else {
    reports = fl::check_all_geometry(run_config(o, config ? &*config : nullptr));
  }
  write_output(o.out, fl::reports_to_json(reports, timing).dump(2) + "\n");
  if (!o.out.empty())
    for (const auto& r : reports) std::cerr << r.check << ": " << (r.passed ? "pass" : "fail") << "\n";
  return fl::all_passed(reports) ? 0 : 1;
}

int cmd_demo(const Options& o) {
  std::optional<fl::Json> config;
  if (!o.config_path.empty()) config = read_json(o.config_path);
  fl::RunConfig cfg = run_config(o, config ? &*config : nullptr);
  std::ostringstream os;
  auto res = fl::demo_s1(cfg, os);
  write_output(o.out, os.str());
  return res.ring_isomorphism ? 0 : 1;
}

int cmd_export(const Options& o) {
  std::optional<fl::Json> config;
  if (!o.config_path.empty()) config = read_json(o.config_path);
  fl::RunConfig cfg = run_config(o, config ? &*config : nullptr);
  write_output(o.out, fl::bundle_to_json(fl::build_bundle(cfg)).dump(1) + "\n");
  return 0;
}

int cmd_import_model(const Options& o) {
  if (o.config_path.empty()) throw fl::Error("import-model needs --config PATH");
  fl::TablePathModel m = fl::path_model_from_json(read_json(o.config_path));
  auto rep = fl::validate_path_model(m);
  fl::Report r;
  r.check = "validate_path_model";
  r.passed = rep.passed;
  r.details = {{"points", m.point_count()}, {"generators", m.generator_count()}};
  if (!rep.passed) {
    fl::Json w = fl::Json::array();
    for (int k : rep.witness) w.push_back(m.name(k));
    r.witness = {{"check", rep.check},
                 {"elements", w},
                 {"residual", fl::chain_to_json(rep.residual, [&](int k) { return m.name(k); })}};
  }
  write_output(o.out, fl::reports_to_json({r}, false).dump(2) + "\n");
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for A-infinity categories, twisted complexes and the wrapped category of T*S^1"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "geometry config, bundle, or path model JSON");
    sub->add_option("--winding", o.winding, "winding bound");
    sub->add_option("--max-d", o.max_d, "maximal arity (2..4)");
    sub->add_option("--twist", o.twist, "background twist")->check(CLI::IsMember({"none", "constant", "parity"}));
    sub->add_option("--out", o.out, "output path (default stdout)");
  };
  auto* check = app.add_subcommand("check-all", "run every checker and print a JSON report");
  add_common(check);
  check->add_option("--mutate", o.mutate, "test-only sign corruption")->check(CLI::IsMember(fl::mutation_names()));
  check->add_flag("--timing", o.timing, "include per-check timings in the report");
  auto* demo = app.add_subcommand("demo-s1", "print the S^1 ring comparison");
  add_common(demo);
  auto* exp = app.add_subcommand("export", "write the category, twisted complexes, functor and moduli as JSON");
  add_common(exp);
  auto* imp = app.add_subcommand("import-model", "validate a user-supplied path model");
  add_common(imp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (const char* seed = std::getenv("FLOERLOOPS_SEED")) std::cerr << "FLOERLOOPS_SEED=" << seed << "\n";
  try {
    if (check->parsed()) return cmd_check_all(o);
    if (demo->parsed()) return cmd_demo(o);
    if (exp->parsed()) return cmd_export(o);
    if (imp->parsed()) return cmd_import_model(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
