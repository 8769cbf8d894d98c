#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floorloop/pipeline.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;

floorloop::Config load_config(const std::string& config_path, long long seed,
                              const std::string& out, const std::string& variant) {
  floorloop::Config cfg;
  if (!config_path.empty()) cfg = floorloop::Config::from_file(config_path);
  if (seed >= 0) cfg.set("seed", std::to_string(seed));
  if (!out.empty()) cfg.set("out.dir", out);
  if (!variant.empty()) cfg.set("descriptor.variant", variant);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"floorloop: opposing-viewpoint loop closure pipeline on floor patches"};
  app.require_subcommand(1);

  std::string config_path, out, variant, variants_csv;
  long long seed = -1;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--seed", seed, "global seed (overrides config)");
  app.add_option("--out", out, "output directory (overrides config)");
  app.add_option("--variant", variant, "raw | homo | homo-pirot | flip-lr");

  const std::vector<std::string> stages = {"simulate", "describe", "match", "correspond",
                                           "register", "optimize", "evaluate"};
  for (const auto& s : stages)
    app.add_subcommand(s, "run the " + s + " stage");
  app.add_subcommand("pipeline", "run every stage in order");
  auto* ablation = app.add_subcommand("ablation", "compare variants side by side");
  ablation->add_option("--variants", variants_csv,
                       "comma-separated variant list (default raw,homo,homo-pirot)");

  CLI11_PARSE(app, argc, argv);

  try {
    const floorloop::Config cfg = load_config(config_path, seed, out, variant);
    const std::string sub = app.get_subcommands().front()->get_name();

    if (sub == "pipeline") {
      const auto metrics = floorloop::run_pipeline(cfg);
      std::printf("recall@%.3gm %.3f | loops %d | ATE odom %.3f m -> optimized %.3f m\n",
                  metrics.radius, metrics.recall, metrics.accepted_loops,
                  metrics.ate_odometry, metrics.ate_optimized);
    } else if (sub == "ablation") {
      std::vector<floorloop::VariantTag> tags;
      if (variants_csv.empty()) {
        tags = {floorloop::VariantTag::Raw, floorloop::VariantTag::Homo,
                floorloop::VariantTag::HomoPiRot};
      } else {
        std::string rest = variants_csv;
        while (!rest.empty()) {
          const auto comma = rest.find(',');
          tags.push_back(floorloop::variant_from_name(rest.substr(0, comma)));
          rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        }
      }
      floorloop::run_ablation(cfg, tags);
      std::printf("%s\n", (floorloop::out_dir(cfg) / "ablation_report.txt").c_str());
    } else {
      floorloop::run_stage(sub, cfg);
    }
  } catch (const floorloop::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const floorloop::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDataError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDataError;
  }
  return 0;
}
