#pragma once

#include <utility>

#include "choreo/choreography.hpp"
#include "choreo/network.hpp"

namespace choreo {

namespace detail {

NodePtr<NetworkEffect> project_erased(const ChoreoNodePtr& node, const LocationId& self);

}  // namespace detail

/// Endpoint projection: the network program `self` must run so that, with
/// every other participant running its own projection, the system behaves as
/// the choreography describes.
///
/// Per effect: a local computation runs only at its own location (everyone
/// else sees Absent); a communication is a send at the sender, a receive at
/// the receiver and a no-op elsewhere (a self-send is a local copy); a
/// conditional broadcasts the decision from the decider, every other
/// location receives it, and all continue with the selected branch.
///
/// Projection is incremental: branch continuations are projected only once
/// their scrutinee value is known.
template <typename A>
NetworkProgram<A> epp(const Choreo<A>& choreography, const LocationId& self) {
  return detail::ProgramAccess::wrap<A>(
      detail::project_erased(detail::ProgramAccess::node(choreography), self));
}

/// Project `choreography` at `self` and run the result over `config`'s
/// transport. This is the one-call deployment entry point.
template <TransportConfig Config, typename A>
A run_choreography(const Config& config, const Choreo<A>& choreography,
                   const LocationId& self, LocalContext ctx = LocalContext()) {
  return run_network(config, self, epp(choreography, self), std::move(ctx));
}

}  // namespace choreo
