#include <iostream>
#include <map>
#include <optional>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "choreo/choreo.hpp"
#include "examples/registry.hpp"

namespace {

// Locations other than the one on the command line run headless in local
// mode: empty input, discarded output.
struct NullBuffer : std::streambuf {
  int overflow(int c) override { return c; }
};

int run(const std::string& example_name, const std::string& location,
        const std::string& backend, const std::string& config_path) {
  using namespace choreo;
  const examples::ExampleInfo* example = examples::find_example(example_name);
  if (example == nullptr) {
    std::cerr << "Unknown example: " << example_name << "\n";
    std::cerr << "Available examples:";
    for (const auto& e : examples::all_examples()) std::cerr << " " << e.name;
    std::cerr << "\n";
    return 2;
  }

  bool known_location = false;
  for (const auto& loc : example->locations) known_location |= (loc == location);
  if (!known_location) {
    std::cerr << "Unknown location: " << location << "\n";
    return 2;
  }

  if (backend == "http") {
    if (config_path.empty()) {
      std::cerr << "--backend http requires --config FILE\n";
      return 2;
    }
    std::optional<HttpConfig> config;
    try {
      config = examples::load_http_config(config_path);
      for (const auto& loc : example->locations) config->address_of(loc);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    run_choreography(*config, example->build(), location);
    return 0;
  }

  // Local backend: every location runs in this process; the chosen location
  // is wired to the real terminal.
  LocalFabric fabric = make_local_fabric(example->locations);
  std::map<LocationId, std::unique_ptr<std::istringstream>> silent_in;
  std::map<LocationId, std::unique_ptr<std::ostream>> silent_out;
  static NullBuffer null_buffer;
  for (const auto& loc : example->locations) {
    silent_in.emplace(loc, std::make_unique<std::istringstream>());
    silent_out.emplace(loc, std::make_unique<std::ostream>(&null_buffer));
  }
  run_all(fabric, example->build(), [&](const LocationId& loc) {
    if (loc == location) return LocalContext();
    return LocalContext(*silent_in.at(loc), *silent_out.at(loc));
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choreographic protocol demos"};
  app.footer(
      "Examples: bookseller, bookseller-ho, bookseller-poly,\n"
      "          kvs-null, kvs-primary-backup, kvs-double-backup\n"
      "\n"
      "With --backend http, --config FILE maps each location to a host and\n"
      "port, one `<location> <host> <port>` per line (# comments allowed).\n"
      "The kvs client reads `GET k` / `PUT k v` lines from stdin and prints\n"
      "`> <response>`; EOF or QUIT ends the session.");

  std::string example;
  std::string location;
  std::string backend = "local";
  std::string config_path;
  app.add_option("example", example, "Which protocol to run")->required();
  app.add_option("location", location, "Which participant this process plays")->required();
  app.add_option("--config", config_path, "Backend config file (http mode)");
  app.add_option("--backend", backend, "Transport: local (in-process) or http")
      ->check(CLI::IsMember({"local", "http"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(example, location, backend, config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
