#include "choreo/network.hpp"

namespace choreo::detail {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

Box run_network_erased(Endpoint& endpoint, const std::vector<LocationId>& locations,
                       const LocationId& self, const NodePtr<NetworkEffect>& node,
                       LocalContext& ctx) {
  auto handler = [&](const NetworkEffect& eff) -> Box {
    return std::visit(
        Overloaded{
            [&](const RunEffect& run) -> Box {
              Unwrapper capability = CapabilityAccess::make(self);
              return run.computation(capability, ctx);
            },
            [&](const SendEffect& send) -> Box {
              require_configured(locations, send.to, "send target");
              endpoint.send(send.to, send.payload, MessageKind::Point);
              return Box(Unit{});
            },
            [&](const RecvEffect& recv) -> Box {
              require_configured(locations, recv.from, "recv source");
              return Box(endpoint.recv(recv.from));
            },
            [&](const BroadcastEffect& bcast) -> Box {
              // A decision fan-out: one message to every other location, in
              // configuration order. The sender already holds the value.
              for (const auto& to : locations) {
                if (to == self) continue;
                endpoint.send(to, bcast.payload, MessageKind::Choice);
              }
              return Box(Unit{});
            },
        },
        eff);
  };
  return run_loop<NetworkEffect>(node, handler);
}

}  // namespace choreo::detail
