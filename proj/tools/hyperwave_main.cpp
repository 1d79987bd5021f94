#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hyperwave/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hyperboloidal wave-equation experiments"};
  app.require_subcommand(1, 1);
  std::string config, out = ".";
  std::uint64_t seed = 0;
  int threads = 1;
  for (const auto& name : hyperwave::harness::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "configuration file")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "random seed (overrides the config)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  std::optional<std::uint64_t> seed_opt;
  if (sub->count("--seed")) seed_opt = seed;
  return hyperwave::harness::run(sub->get_name(), config, out, seed_opt, threads);
}
