#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>

#include "choreo/choreo.hpp"

namespace choreo::examples {

inline const LocationId kv_client = "client";
inline const LocationId kv_primary = "primary";
inline const LocationId kv_backup = "backup";
inline const LocationId kv_backup1 = "backup1";
inline const LocationId kv_backup2 = "backup2";

/// A client request: set a key or look one up.
struct Put {
  std::string key;
  std::string value;

  bool operator==(const Put&) const = default;
};
struct Get {
  std::string key;

  bool operator==(const Get&) const = default;
};
using Request = std::variant<Put, Get>;

/// The value stored under the key, or nullopt when absent.
using Response = std::optional<std::string>;

}  // namespace choreo::examples

namespace choreo {

/// Requests travel on the wire as {"fields": [...], "tag": "Put"|"Get"}.
template <>
struct WireFormat<examples::Request> {
  static nlohmann::json encode(const examples::Request& request);
  static examples::Request decode(const nlohmann::json& j);
};

}  // namespace choreo

namespace choreo::examples {

/// The store itself, confined to one location's local computations. Held by
/// reference so a location can mutate it across requests.
using StoreState = std::map<std::string, std::string>;
using StoreRef = std::shared_ptr<StoreState>;

/// Apply one request: Put stores and echoes the value, Get looks up.
Response handle_request(const Request& request, StoreState& store);

/// `Just "v"` / `Nothing` rendering used by the client terminal.
std::string show_response(const Response& response);

/// Parse a `GET k` / `PUT k v` command line.
std::optional<Request> parse_request_line(const std::string& line);

/// Read the next request from the client terminal. Unparseable lines are
/// skipped; EOF or a literal `QUIT` line ends the session (nullopt).
std::optional<Request> read_request(std::istream& in);

/// How the primary replicates data, abstracted over the replica state shape
/// `S`. A strategy consumes the request (at the primary) and must leave the
/// primary holding the response.
template <typename S>
using ReplicationStrategy = std::function<Choreo<Located<Response>>(Located<Request>, S)>;

using NullStates = Located<StoreRef>;
using PrimaryBackupStates = std::pair<Located<StoreRef>, Located<StoreRef>>;
using DoubleBackupStates = std::tuple<Located<StoreRef>, Located<StoreRef>, Located<StoreRef>>;

/// No replication: the primary handles the request alone.
ReplicationStrategy<NullStates> null_strategy();

/// Forward Puts to one backup and wait for its acknowledgment before the
/// primary applies the request; Gets never involve the backup.
ReplicationStrategy<PrimaryBackupStates> primary_backup();

/// Replicate Puts to two backups (via do_backup), then apply at the primary.
ReplicationStrategy<DoubleBackupStates> double_backup();

/// Location-polymorphic replication step: `loc_a` inspects the request it
/// owns; a Put is forwarded to `loc_b`, applied to `state` there and
/// acknowledged back; a Get is a no-op. Rejects loc_a == loc_b.
Choreo<Unit> do_backup(const LocationId& loc_a, const LocationId& loc_b,
                       Located<Request> request, Located<StoreRef> state);

/// One client/server exchange: ship the request to the primary, run the
/// replication strategy, ship the response back.
template <typename S>
Choreo<Located<Response>> kvs(Located<Request> request, S states,
                              ReplicationStrategy<S> strategy) {
  return comm(kv_client, std::move(request), kv_primary)
      .and_then([states, strategy = std::move(strategy)](Located<Request> at_primary) {
        return strategy(std::move(at_primary), states);
      })
      .and_then([](Located<Response> response) {
        return comm(kv_primary, std::move(response), kv_client);
      });
}

/// Interactive sessions: the client reads commands from its context's input
/// and prints `> <response>` lines until EOF/QUIT. Store references may be
/// injected so tests can inspect replica contents after a run; by default
/// each location allocates a fresh store.
Choreo<Unit> kv_session_null(StoreRef primary_store = nullptr);
Choreo<Unit> kv_session_primary_backup(StoreRef primary_store = nullptr,
                                       StoreRef backup_store = nullptr);
Choreo<Unit> kv_session_double_backup(StoreRef primary_store = nullptr,
                                      StoreRef backup1_store = nullptr,
                                      StoreRef backup2_store = nullptr);

}  // namespace choreo::examples
