#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "choreo/effect_program.hpp"
#include "choreo/errors.hpp"
#include "choreo/location.hpp"

namespace choreo {

/// Run a local computation at this endpoint.
struct RunEffect {
  detail::ErasedLocal computation;
};

/// Ship encoded bytes to one location.
struct SendEffect {
  std::string payload;
  LocationId to;
};

/// Block until the next message from `from` arrives; yields its bytes.
/// Messages from one sender arrive in send order.
struct RecvEffect {
  LocationId from;
};

/// Ship encoded bytes to every other configured location.
struct BroadcastEffect {
  std::string payload;
};

/// The per-endpoint effect vocabulary, the target of projection.
using NetworkEffect = std::variant<RunEffect, SendEffect, RecvEffect, BroadcastEffect>;

/// A network program: what one location actually executes.
template <typename A>
using NetworkProgram = Program<NetworkEffect, A>;

inline NetworkProgram<Unit> send(std::string payload, LocationId to) {
  return perform<Unit>(NetworkEffect(SendEffect{std::move(payload), std::move(to)}));
}

inline NetworkProgram<std::string> recv(LocationId from) {
  return perform<std::string>(NetworkEffect(RecvEffect{std::move(from)}));
}

inline NetworkProgram<Unit> broadcast(std::string payload) {
  return perform<Unit>(NetworkEffect(BroadcastEffect{std::move(payload)}));
}

template <typename F>
auto run(F computation) -> NetworkProgram<detail::local_result_t<F>> {
  using T = detail::local_result_t<F>;
  return perform<T>(NetworkEffect(RunEffect{detail::erase_local(std::move(computation))}));
}

/// Why a message is being sent: an explicit communication, or the automatic
/// fan-out of a conditional decision. Transports deliver both the same way;
/// the distinction exists for introspection.
enum class MessageKind { Point, Choice };

/// One location's connection to a message transport. `send` must not return
/// until the message is durably queued at the receiver; `recv` blocks until
/// a message from `from` is available and dequeues exactly one.
class Endpoint {
 public:
  virtual ~Endpoint() = default;

  virtual void send(const LocationId& to, const std::string& payload, MessageKind kind) = 0;
  virtual std::string recv(const LocationId& from) = 0;
};

/// A backend configuration: the set of participating locations plus the
/// ability to open a transport endpoint for one of them.
template <typename C>
concept TransportConfig = requires(const C& config, const LocationId& self) {
  { config.locations() } -> std::convertible_to<std::vector<LocationId>>;
  { config.make_endpoint(self) } -> std::convertible_to<std::unique_ptr<Endpoint>>;
};

namespace detail {

Box run_network_erased(Endpoint& endpoint, const std::vector<LocationId>& locations,
                       const LocationId& self, const NodePtr<NetworkEffect>& node,
                       LocalContext& ctx);

inline void require_configured(const std::vector<LocationId>& locations,
                               const LocationId& loc, const char* role) {
  for (const auto& l : locations) {
    if (l == loc) return;
  }
  throw ConfigError(std::string(role) + " location `" + loc +
                    "` is not in the backend configuration");
}

}  // namespace detail

/// Execute a network program against an already-open endpoint. Exposed so
/// tests can interpret programs over scripted transports.
template <typename A>
A run_network_on(Endpoint& endpoint, const std::vector<LocationId>& locations,
                 const LocationId& self, const NetworkProgram<A>& program,
                 LocalContext ctx = LocalContext()) {
  detail::require_configured(locations, self, "self");
  return detail::unbox<A>(detail::run_network_erased(
      endpoint, locations, self, detail::ProgramAccess::node(program), ctx));
}

/// Execute a network program at `self` over the transport `config`
/// describes. The endpoint is open before the first effect is interpreted
/// and torn down after the program returns.
template <TransportConfig Config, typename A>
A run_network(const Config& config, const LocationId& self,
              const NetworkProgram<A>& program, LocalContext ctx = LocalContext()) {
  std::vector<LocationId> locations = config.locations();
  detail::require_configured(locations, self, "self");
  std::unique_ptr<Endpoint> endpoint = config.make_endpoint(self);
  return detail::unbox<A>(detail::run_network_erased(
      *endpoint, locations, self, detail::ProgramAccess::node(program), ctx));
}

}  // namespace choreo
