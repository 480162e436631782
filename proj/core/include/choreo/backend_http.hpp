#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "choreo/network.hpp"
#include "choreo/projection.hpp"

namespace choreo {

/// Where one location listens.
struct HostPort {
  std::string host;
  std::uint16_t port = 0;
};

/// How hard a sender tries before giving up on a peer. The default covers
/// peers that start a few seconds late.
struct RetryBudget {
  int attempts = 30;
  std::chrono::milliseconds backoff{100};
};

/// Deployable transport: every location is an HTTP server with per-sender
/// inbox queues, and a send is `POST /msg/{sender}` to the receiver with the
/// encoded payload as the request body (Content-Type:
/// application/octet-stream). A 200 response means the message is buffered
/// at the receiver.
class HttpConfig {
 public:
  const std::vector<LocationId>& locations() const { return order_; }
  const HostPort& address_of(const LocationId& loc) const;
  const RetryBudget& retry() const { return retry_; }

  /// Starts the listener for `self` immediately; it accepts messages from
  /// the moment this returns and shuts down when the endpoint is destroyed.
  std::unique_ptr<Endpoint> make_endpoint(const LocationId& self) const;

 private:
  HttpConfig() = default;

  std::vector<LocationId> order_;
  std::map<LocationId, HostPort> addresses_;
  RetryBudget retry_;

  friend HttpConfig make_http_config(
      const std::vector<std::pair<LocationId, HostPort>>& entries, RetryBudget retry);
};

/// Validate and build an HTTP backend configuration: entries nonempty,
/// locations distinct, ports in 1..65535, (host, port) pairs distinct.
HttpConfig make_http_config(const std::vector<std::pair<LocationId, HostPort>>& entries,
                            RetryBudget retry = RetryBudget{});

}  // namespace choreo
