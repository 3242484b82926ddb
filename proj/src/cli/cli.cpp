#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "summing/errors.hpp"

namespace summing::cli {

namespace {

json load_config(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries the line and column of the syntax error.
    throw ConfigError("", path + ": " + e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Summing-norm estimators and verification runs"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<double> tolerance;
  bool timing = false;

  app.add_option("command", command, "Command to run; overrides the config's \"command\"")
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--out", out_path, "Report path (default: standard output)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--restarts", restarts, "Random restarts per search")->check(CLI::PositiveNumber);
  app.add_option("--tolerance", tolerance, "Relative tolerance of oracle comparisons")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", timing, "Record wall-clock seconds (reports are then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  Report report;
  std::string config_text;
  try {
    json config = config_path.empty() ? json::object() : load_config(config_path, config_text);
    if (!config.is_object()) throw ConfigError("/", "config must be a JSON object");
    // Flags are folded into the config before hashing, so the hash names the
    // effective experiment.
    if (!command.empty()) config["command"] = command;
    if (seed) config["seed"] = *seed;
    if (restarts) config["search"]["restarts"] = *restarts;
    if (tolerance) config["tolerance"] = *tolerance;
    const Node root(config, "");
    command = root.at("command").string();

    Options opt;
    opt.config = parse_search(root);
    opt.tolerance = root.number_or("tolerance", command == "validate-oracles" ? 1e-3 : 1e-6);
    if (opt.tolerance < 0.0) root.at("tolerance").fail("tolerance must be nonnegative");
    opt.timing = timing;

    report = run_command(command, root, opt);
    report.command = command;
    report.seed = opt.config.seed;
    report.inputs = config;
    report.config_hash = fnv1a_hex(config.dump());
  } catch (const ConfigError& e) {
    err << "config error: ";
    if (const auto line = e.path().empty() ? std::nullopt : locate_line(config_text, e.path()))
      err << config_path << ":" << *line << ": ";
    err << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const EstimationError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  } catch (const SearchError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  } catch (const DegenerateFamilyError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  }

  const std::string text = format == "csv" ? to_csv(report) : to_json(report);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "cannot write report to '" << out_path << "'\n";
      return kExitConfig;
    }
  }
  if (report_failed(report)) {
    err << command << ": check failed (see report)\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace summing::cli
