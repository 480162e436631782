#include "choreo/backend_local.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <set>

namespace choreo {

namespace {

// splitmix64: cheap, well-mixed hash for deterministic per-message delays.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_str(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

struct LocalFabric::Impl {
  using Clock = std::chrono::steady_clock;

  struct Message {
    std::string payload;
    Clock::time_point visible_at;
  };

  struct Queue {
    std::deque<Message> messages;
    Clock::time_point last_visible = Clock::time_point::min();
    std::uint64_t enqueued = 0;
  };

  std::vector<LocationId> locations;
  DelayPolicy delay;

  mutable std::mutex mutex;
  mutable std::condition_variable cv;
  std::map<std::pair<LocationId, LocationId>, Queue> queues;
  std::vector<Delivery> log;
  bool closed = false;

  Impl(std::vector<LocationId> locs, DelayPolicy d) : locations(std::move(locs)), delay(d) {
    for (const auto& from : locations) {
      for (const auto& to : locations) {
        queues.emplace(std::make_pair(from, to), Queue{});
      }
    }
  }

  std::chrono::milliseconds delay_for(const LocationId& from, const LocationId& to,
                                      std::uint64_t seq) const {
    if (!delay.enabled()) return std::chrono::milliseconds(0);
    std::uint64_t h = mix64(delay.seed ^ mix64(hash_str(from)) ^ mix64(mix64(hash_str(to))) ^
                            mix64(seq + 1));
    auto span = static_cast<std::uint64_t>(delay.max.count()) + 1;
    return std::chrono::milliseconds(static_cast<long>(h % span));
  }

  void enqueue(const LocationId& from, const LocationId& to, const std::string& payload,
               MessageKind kind) {
    std::lock_guard<std::mutex> lock(mutex);
    if (closed) throw TransportError("local fabric is closed");
    Queue& q = queues.at({from, to});
    auto d = delay_for(from, to, q.enqueued);
    q.enqueued += 1;
    // Visibility stays monotone per queue so delays never reorder a pair.
    auto visible = std::max(Clock::now() + d, q.last_visible);
    q.last_visible = visible;
    q.messages.push_back(Message{payload, visible});
    log.push_back(Delivery{from, to, payload, kind, d});
    cv.notify_all();
  }

  std::string dequeue(const LocationId& from, const LocationId& to) {
    std::unique_lock<std::mutex> lock(mutex);
    auto& q = queues.at({from, to});
    while (true) {
      if (closed) throw TransportError("local fabric is closed");
      if (!q.messages.empty()) {
        auto now = Clock::now();
        auto visible_at = q.messages.front().visible_at;
        if (visible_at <= now) {
          std::string payload = std::move(q.messages.front().payload);
          q.messages.pop_front();
          return payload;
        }
        cv.wait_until(lock, visible_at);
      } else {
        cv.wait(lock);
      }
    }
  }
};

namespace {

class FabricEndpoint final : public Endpoint {
 public:
  FabricEndpoint(std::shared_ptr<LocalFabric::Impl> impl, LocationId self)
      : impl_(std::move(impl)), self_(std::move(self)) {}

  void send(const LocationId& to, const std::string& payload, MessageKind kind) override {
    impl_->enqueue(self_, to, payload, kind);
  }

  std::string recv(const LocationId& from) override { return impl_->dequeue(from, self_); }

 private:
  std::shared_ptr<LocalFabric::Impl> impl_;
  LocationId self_;
};

}  // namespace

const std::vector<LocationId>& LocalFabric::locations() const { return impl_->locations; }

std::unique_ptr<Endpoint> LocalFabric::make_endpoint(const LocationId& self) const {
  return std::make_unique<FabricEndpoint>(impl_, self);
}

std::size_t LocalFabric::pending(const LocationId& from, const LocationId& to) const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  auto it = impl_->queues.find({from, to});
  return it == impl_->queues.end() ? 0 : it->second.messages.size();
}

bool LocalFabric::quiescent() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  for (const auto& [key, q] : impl_->queues) {
    if (!q.messages.empty()) return false;
  }
  return true;
}

std::vector<LocalFabric::Delivery> LocalFabric::deliveries() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->log;
}

void LocalFabric::close() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->closed = true;
  impl_->cv.notify_all();
}

LocalFabric make_local_fabric(std::vector<LocationId> locations, DelayPolicy delay) {
  if (locations.empty()) {
    throw ConfigError("local fabric needs at least one location");
  }
  std::set<LocationId> seen;
  for (const auto& loc : locations) {
    if (loc.empty()) throw ConfigError("location names must be nonempty");
    if (!seen.insert(loc).second) {
      throw ConfigError("duplicate location `" + loc + "` in fabric configuration");
    }
  }
  return LocalFabric(std::make_shared<LocalFabric::Impl>(std::move(locations), delay));
}

}  // namespace choreo
