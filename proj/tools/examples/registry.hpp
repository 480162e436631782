#pragma once

#include <functional>
#include <string>
#include <vector>

#include "choreo/choreo.hpp"

namespace choreo::examples {

/// A runnable demo protocol: its CLI name, the locations that must be
/// deployed, and a builder for the full choreography (result printing
/// included).
struct ExampleInfo {
  std::string name;
  std::vector<LocationId> locations;
  std::function<Choreo<Unit>()> build;
};

const std::vector<ExampleInfo>& all_examples();

/// nullptr when no example has that name.
const ExampleInfo* find_example(const std::string& name);

/// Parse a backend config file: one `<location> <host> <port>` per line,
/// `#` comments and blank lines allowed. Throws ConfigError on any problem.
HttpConfig load_http_config(const std::string& path);

}  // namespace choreo::examples
