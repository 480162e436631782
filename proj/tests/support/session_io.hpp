#pragma once

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "choreo/location.hpp"

namespace testsupport {

/// Streams for one in-process run: `input_at` reads the scripted text,
/// every other location reads nothing; each location's output is captured.
class SessionIo {
 public:
  explicit SessionIo(const std::vector<choreo::LocationId>& locations,
                     const choreo::LocationId& input_at = {},
                     const std::string& input_text = {}) {
    for (const auto& loc : locations) {
      in_.emplace(loc,
                  std::make_unique<std::istringstream>(loc == input_at ? input_text : ""));
      out_.emplace(loc, std::make_unique<std::ostringstream>());
    }
  }

  std::function<choreo::LocalContext(const choreo::LocationId&)> contexts() {
    return [this](const choreo::LocationId& loc) {
      return choreo::LocalContext(*in_.at(loc), *out_.at(loc));
    };
  }

  std::string output_at(const choreo::LocationId& loc) const { return out_.at(loc)->str(); }

 private:
  std::map<choreo::LocationId, std::unique_ptr<std::istringstream>> in_;
  std::map<choreo::LocationId, std::unique_ptr<std::ostringstream>> out_;
};

}  // namespace testsupport
