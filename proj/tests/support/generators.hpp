#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "choreo/backend_local.hpp"
#include "choreo/choreography.hpp"

namespace testsupport {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Rng {
  std::uint64_t state;

  std::uint64_t next() {
    state = mix64(state);
    return state;
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

/// Random choreographies over 2..4 locations with up to 6 effects drawn from
/// all three constructs, locals deterministic. The program ends with one
/// summary value per location (a fold of everything that location owns), so
/// projected runs can be compared against the direct interpreter
/// location-by-location.
struct GeneratedChoreo {
  std::vector<choreo::LocationId> locations;
  choreo::Choreo<std::vector<choreo::Located<int>>> program;
};

namespace gendetail {

using Pool = std::vector<std::pair<choreo::LocationId, choreo::Located<int>>>;
using Summary = std::vector<choreo::Located<int>>;

inline choreo::Choreo<Summary> summarize(Pool pool, std::vector<choreo::LocationId> locations,
                                         std::size_t index, Summary acc) {
  if (index == locations.size()) {
    return choreo::Choreo<Summary>::pure(std::move(acc));
  }
  choreo::LocationId loc = locations[index];
  std::vector<choreo::Located<int>> owned;
  for (const auto& [owner, value] : pool) {
    if (owner == loc) owned.push_back(value);
  }
  return choreo::locally(loc,
                         [owned](const choreo::Unwrapper& un) {
                           unsigned acc = 7;
                           for (const auto& v : owned) {
                             acc = acc * 31u + static_cast<unsigned>(un(v));
                           }
                           return static_cast<int>(acc);
                         })
      .and_then([pool, locations, index, acc](choreo::Located<int> summary) {
        Summary extended = acc;
        extended.push_back(summary);
        return summarize(pool, locations, index + 1, std::move(extended));
      });
}

inline choreo::Choreo<Summary> grow(Pool pool, int depth, std::uint64_t seed,
                                    std::vector<choreo::LocationId> locations) {
  Rng rng{mix64(seed)};
  if (depth <= 0) {
    return summarize(std::move(pool), std::move(locations), 0, {});
  }
  const int kind = pool.empty() ? 0 : static_cast<int>(rng.below(3));
  if (kind == 0) {
    choreo::LocationId at = locations[rng.below(locations.size())];
    std::vector<choreo::Located<int>> owned;
    for (const auto& [owner, value] : pool) {
      if (owner == at) owned.push_back(value);
    }
    const int salt = static_cast<int>(rng.below(1000));
    const std::uint64_t next_seed = rng.next();
    return choreo::locally(at,
                           [owned, salt](const choreo::Unwrapper& un) {
                             unsigned acc = static_cast<unsigned>(salt);
                             for (const auto& v : owned) {
                               acc = acc * 31u + static_cast<unsigned>(un(v));
                             }
                             return static_cast<int>(acc);
                           })
        .and_then([pool, at, depth, next_seed, locations](choreo::Located<int> value) {
          Pool extended = pool;
          extended.emplace_back(at, value);
          return grow(std::move(extended), depth - 1, next_seed, locations);
        });
  }
  if (kind == 1) {
    const auto& [owner, value] = pool[rng.below(pool.size())];
    // The receiver may equal the sender: self-communication is legal.
    choreo::LocationId receiver = locations[rng.below(locations.size())];
    const std::uint64_t next_seed = rng.next();
    return choreo::comm(owner, value, receiver)
        .and_then([pool, receiver, depth, next_seed, locations](choreo::Located<int> arrived) {
          Pool extended = pool;
          extended.emplace_back(receiver, arrived);
          return grow(std::move(extended), depth - 1, next_seed, locations);
        });
  }
  const auto& [owner, value] = pool[rng.below(pool.size())];
  const std::uint64_t even_seed = rng.next();
  const std::uint64_t odd_seed = rng.next();
  return choreo::cond(owner, value,
                      [pool, depth, even_seed, odd_seed, locations](int scrutinee) {
                        const bool even = (static_cast<unsigned>(scrutinee) & 1u) == 0;
                        return grow(pool, depth - 1, even ? even_seed : odd_seed, locations);
                      });
}

}  // namespace gendetail

inline GeneratedChoreo generate_choreography(std::uint64_t seed) {
  Rng rng{mix64(seed ^ 0xc0ffee)};
  const std::size_t location_count = 2 + rng.below(3);
  std::vector<choreo::LocationId> locations;
  for (std::size_t i = 0; i < location_count; ++i) {
    locations.push_back("p" + std::to_string(i));
  }
  const int depth = 1 + static_cast<int>(rng.below(6));
  return GeneratedChoreo{locations, gendetail::grow({}, depth, rng.next(), locations)};
}

/// Run one generated choreography both ways and compare per-location
/// results. Throws with a description on any mismatch.
inline void check_oracle_equivalence(std::uint64_t seed) {
  GeneratedChoreo generated = generate_choreography(seed);
  auto oracle = choreo::run_choreo(generated.program);

  choreo::LocalFabric fabric = choreo::make_local_fabric(generated.locations);
  auto projected = choreo::run_all(fabric, generated.program);

  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "seed " << seed << ": " << why;
    throw std::runtime_error(msg.str());
  };

  if (oracle.size() != generated.locations.size()) fail("oracle summary has wrong arity");
  for (std::size_t i = 0; i < generated.locations.size(); ++i) {
    const choreo::LocationId& loc = generated.locations[i];
    const auto& per_location = projected.at(loc);
    if (per_location.size() != generated.locations.size()) {
      fail("projected summary at " + loc + " has wrong arity");
    }
    if (!per_location[i].is_present()) {
      fail("projected summary at " + loc + " is absent at its own slot");
    }
    if (per_location[i].reveal(loc) != oracle[i].reveal(loc)) {
      fail("projected result at " + loc + " differs from the direct interpreter");
    }
    for (std::size_t j = 0; j < per_location.size(); ++j) {
      if (j != i && per_location[j].is_present()) {
        fail("projection at " + loc + " holds a value owned by " + generated.locations[j]);
      }
    }
  }
  if (!fabric.quiescent()) fail("mailboxes not quiescent after the run");
}

}  // namespace testsupport
