#include "choreo/backend_http.hpp"

#include <condition_variable>
#include <csignal>
#include <deque>
#include <mutex>
#include <set>
#include <thread>

#include <httplib.h>

namespace choreo {

namespace {

std::string percent_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~';
    if (unreserved) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

void ignore_sigpipe_once() {
  // A peer closing its socket mid-write must surface as a failed send, not a
  // process kill.
  static const bool done = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

class HttpEndpoint final : public Endpoint {
 public:
  HttpEndpoint(std::vector<LocationId> locations, std::map<LocationId, HostPort> addresses,
               LocationId self, RetryBudget retry)
      : locations_(std::move(locations)),
        addresses_(std::move(addresses)),
        self_(std::move(self)),
        retry_(retry) {
    ignore_sigpipe_once();
    for (const auto& loc : locations_) {
      inboxes_.emplace(loc, std::deque<std::string>{});
    }

    server_.Post(R"(/msg/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string sender = req.matches[1];
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = inboxes_.find(sender);
      if (it == inboxes_.end()) {
        res.status = 400;
        return;
      }
      // Buffer before acknowledging: a 200 means the message is queued.
      it->second.push_back(req.body);
      cv_.notify_all();
      res.status = 200;
    });

    const HostPort& addr = addresses_.at(self_);
    if (!server_.bind_to_port("0.0.0.0", addr.port)) {
      throw TransportError("location `" + self_ + "` failed to bind port " +
                           std::to_string(addr.port));
    }
    listener_ = std::thread([this] { server_.listen_after_bind(); });
    while (!server_.is_running()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
  }

  ~HttpEndpoint() override {
    server_.stop();
    if (listener_.joinable()) listener_.join();
  }

  void send(const LocationId& to, const std::string& payload, MessageKind) override {
    const HostPort& addr = addresses_.at(to);
    const std::string path = "/msg/" + percent_encode(self_);
    httplib::Client client(addr.host, addr.port);
    client.set_connection_timeout(2, 0);
    for (int attempt = 1; attempt <= retry_.attempts; ++attempt) {
      auto res = client.Post(path, payload, "application/octet-stream");
      if (res && res->status == 200) return;
      if (attempt < retry_.attempts) std::this_thread::sleep_for(retry_.backoff);
    }
    throw TransportError("send from `" + self_ + "` to `" + to + "` failed after " +
                         std::to_string(retry_.attempts) + " attempts");
  }

  std::string recv(const LocationId& from) override {
    std::unique_lock<std::mutex> lock(mutex_);
    auto& queue = inboxes_.at(from);
    cv_.wait(lock, [&] { return !queue.empty(); });
    std::string payload = std::move(queue.front());
    queue.pop_front();
    return payload;
  }

 private:
  std::vector<LocationId> locations_;
  std::map<LocationId, HostPort> addresses_;
  LocationId self_;
  RetryBudget retry_;

  httplib::Server server_;
  std::thread listener_;

  std::mutex mutex_;
  std::condition_variable cv_;
  std::map<LocationId, std::deque<std::string>> inboxes_;
};

}  // namespace

const HostPort& HttpConfig::address_of(const LocationId& loc) const {
  auto it = addresses_.find(loc);
  if (it == addresses_.end()) {
    throw ConfigError("location `" + loc + "` is not in the backend configuration");
  }
  return it->second;
}

std::unique_ptr<Endpoint> HttpConfig::make_endpoint(const LocationId& self) const {
  address_of(self);
  return std::make_unique<HttpEndpoint>(order_, addresses_, self, retry_);
}

HttpConfig make_http_config(const std::vector<std::pair<LocationId, HostPort>>& entries,
                            RetryBudget retry) {
  if (entries.empty()) {
    throw ConfigError("HTTP backend configuration needs at least one location");
  }
  HttpConfig config;
  config.retry_ = retry;
  std::set<std::pair<std::string, std::uint16_t>> endpoints_seen;
  for (const auto& [loc, addr] : entries) {
    if (loc.empty()) throw ConfigError("location names must be nonempty");
    if (addr.port == 0) {
      throw ConfigError("location `" + loc + "` has invalid port 0");
    }
    if (config.addresses_.count(loc)) {
      throw ConfigError("duplicate location `" + loc + "` in HTTP configuration");
    }
    if (!endpoints_seen.insert({addr.host, addr.port}).second) {
      throw ConfigError("duplicate host:port " + addr.host + ":" + std::to_string(addr.port) +
                        " in HTTP configuration");
    }
    config.order_.push_back(loc);
    config.addresses_.emplace(loc, addr);
  }
  return config;
}

}  // namespace choreo
