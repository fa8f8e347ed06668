#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "fonctex/cli.hpp"
#include "fonctex/error.hpp"

namespace {

struct Sub {
  const char* name;
  const char* help;
};

const Sub kSubs[] = {
    {"selftest", "run the built-in sanity checks"},
    {"degree", "polynomial degree of a functor within a window"},
    {"psf", "does a functor have an n-presentation induced from a support"},
    {"present", "truncated projective presentation with certificate"},
    {"ext", "Ext between two functors"},
    {"ext-compare", "Ext over matrix monoids against the truncated functor category"},
    {"hh", "Hochschild homology of a category with bifunctor coefficients"},
    {"hh-stab", "stabilization table for Hochschild homology of matrix monoids"},
    {"kunneth", "Kunneth comparison for external tensor products"},
};

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fonctex: finite experiments with functor categories over finite rings"};
  app.set_version_flag("--version", std::string(fonctex::kVersion));
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value configuration file");

  std::map<std::string, std::string> values;
  for (const auto& [name, help] : kSubs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "flat key = value configuration file");
    for (const std::string& key : fonctex::ExperimentConfig::known_keys()) {
      if (key == "command") continue;
      sub->add_option("--" + key, values[key], "config key '" + key + "'");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  fonctex::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw fonctex::UsageError("cannot open config file '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = fonctex::ExperimentConfig::parse(ss.str());
    }
    // Flags override the file.
    for (const auto& [key, value] : values)
      if (!value.empty()) cfg.set(key, value);
    if (!app.get_subcommands().empty()) cfg.set("command", app.get_subcommands().front()->get_name());
    if (!cfg.has("command")) throw fonctex::UsageError("no command given");
  } catch (const fonctex::UsageError& e) {
    std::cerr << "fonctex: " << e.what() << "\n" << app.help();
    return 1;
  }

  const fonctex::RunOutcome out = fonctex::run(cfg);
  std::cerr << out.summary;
  if (cfg.has("report")) {
    if (!write_file(cfg.get("report"), out.report)) {
      std::cerr << "fonctex: cannot write " << cfg.get("report") << "\n";
      return 1;
    }
  } else {
    std::cout << out.report;
  }
  if (!out.csv.empty()) {
    if (cfg.has("out")) {
      if (!write_file(cfg.get("out"), out.csv)) {
        std::cerr << "fonctex: cannot write " << cfg.get("out") << "\n";
        return 1;
      }
    } else {
      std::cerr << out.csv;
    }
  }
  return out.exit_code;
}
