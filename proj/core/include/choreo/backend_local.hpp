#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "choreo/choreography.hpp"
#include "choreo/network.hpp"
#include "choreo/projection.hpp"

namespace choreo {

/// Message visibility policy for the in-process fabric. `none` delivers
/// immediately; `uniform` holds each message back for a pseudo-random delay
/// in [0, max]. Delays are derived from (seed, sender, receiver, sequence
/// number), so a given seed assigns the same delay to the same message on
/// every run, independent of scheduling.
struct DelayPolicy {
  std::chrono::milliseconds max{0};
  std::uint64_t seed = 0;

  static DelayPolicy none() { return {}; }
  static DelayPolicy uniform(std::chrono::milliseconds max_delay, std::uint64_t seed) {
    return {max_delay, seed};
  }

  bool enabled() const { return max.count() > 0; }
};

/// An in-process transport: every location runs as a thread in this process
/// and messages travel through per-(sender, receiver) FIFO queues. Built for
/// tests; supports delivery-delay injection and mailbox introspection.
class LocalFabric {
 public:
  struct Impl;

  /// One observed enqueue, for introspection.
  struct Delivery {
    LocationId from;
    LocationId to;
    std::string payload;
    MessageKind kind;
    std::chrono::milliseconds delay;
  };

  const std::vector<LocationId>& locations() const;
  std::unique_ptr<Endpoint> make_endpoint(const LocationId& self) const;

  /// Messages enqueued for (from, to) and not yet received.
  std::size_t pending(const LocationId& from, const LocationId& to) const;

  /// True when every mailbox is empty. After a complete run this must hold:
  /// a leftover message means some send had no matching receive.
  bool quiescent() const;

  /// Everything enqueued so far, in enqueue order.
  std::vector<Delivery> deliveries() const;

  /// Tear the fabric down: every blocked and future receive throws
  /// TransportError. Used by harnesses to unwind peers after a failure.
  void close() const;

 private:
  explicit LocalFabric(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<Impl> impl_;

  friend LocalFabric make_local_fabric(std::vector<LocationId>, DelayPolicy);
};

/// Build a fabric for `locations` (nonempty, distinct).
LocalFabric make_local_fabric(std::vector<LocationId> locations,
                              DelayPolicy delay = DelayPolicy::none());

/// Project and run `choreography` at every fabric location concurrently and
/// collect each location's result. Any endpoint failure tears the fabric
/// down (so no peer blocks forever) and is rethrown with the failing
/// location named. `context_for`, when given, supplies each location's host
/// context.
template <typename A>
std::map<LocationId, A> run_all(
    const LocalFabric& fabric, const Choreo<A>& choreography,
    const std::function<LocalContext(const LocationId&)>& context_for = {}) {
  const std::vector<LocationId>& locations = fabric.locations();
  std::vector<std::optional<A>> results(locations.size());
  std::vector<std::string> failures(locations.size());
  std::vector<std::thread> threads;
  threads.reserve(locations.size());
  for (std::size_t i = 0; i < locations.size(); ++i) {
    LocalContext ctx = context_for ? context_for(locations[i]) : LocalContext();
    threads.emplace_back([&, i, ctx] {
      try {
        results[i] = run_choreography(fabric, choreography, locations[i], ctx);
      } catch (const std::exception& e) {
        failures[i] = e.what();
        fabric.close();
      }
    });
  }
  for (auto& t : threads) t.join();
  std::string aborted;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (!results[i].has_value()) {
      if (!aborted.empty()) aborted += "; ";
      aborted += "endpoint `" + locations[i] + "` aborted: " + failures[i];
    }
  }
  if (!aborted.empty()) throw Error(aborted);
  std::map<LocationId, A> out;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    out.emplace(locations[i], std::move(*results[i]));
  }
  return out;
}

}  // namespace choreo
