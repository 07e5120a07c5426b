#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "config.hpp"
#include "scenarios.hpp"

namespace fs = std::filesystem;
using namespace nonkp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral toolkit for the Non-KP system"};
  std::string scenario_name;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  std::vector<std::string> overrides;
  app.add_option("scenario", scenario_name,
                 "simulate | dispersion-table | mass-wave | bourgain-scaling | dn-verify | conservation")
      ->required();
  app.add_option("--config", config_path, "INI-style configuration file");
  app.add_option("--out", out_dir, "output directory (default $NONKP_OUT_DIR/<scenario> or nonkp-out/<scenario>)");
  auto* seed_opt = app.add_option("--seed", seed, "overrides initial.seed");
  auto* threads_opt = app.add_option("--threads", threads, "overrides run.threads")->check(CLI::Range(1, 1024));
  app.add_option("--set", overrides, "section.key=value, applied after the config file")->take_all();
  CLI11_PARSE(app, argc, argv);

  try {
    const ScenarioKind kind = parse_scenario(scenario_name);
    RawConfig raw = config_path.empty() ? RawConfig{} : read_config_file(config_path);
    for (const auto& o : overrides) apply_override(raw, o);
    if (*seed_opt) raw["initial.seed"] = std::to_string(seed);
    if (*threads_opt) raw["run.threads"] = std::to_string(threads);
    const Scenario scn = build_scenario(kind, raw);

    fs::path out;
    if (!out_dir.empty()) {
      out = out_dir;
    } else if (const char* root = std::getenv("NONKP_OUT_DIR"); root != nullptr && *root != '\0') {
      out = fs::path(root) / scenario_name;
    } else {
      out = fs::path("nonkp-out") / scenario_name;
    }
    return execute(scn, out, std::cout);
  } catch (const ConfigError& e) {
    nlohmann::json f = failure_json(scenario_name, "config", nullptr, e.what());
    if (!e.key().empty()) f["key"] = e.key();
    std::cout << f.dump() << '\n';
    return 2;
  }
}
