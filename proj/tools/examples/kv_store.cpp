#include "examples/kv_store.hpp"

#include <istream>
#include <ostream>

namespace choreo::examples {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

Response handle_request(const Request& request, StoreState& store) {
  return std::visit(Overloaded{
                        [&](const Put& put) -> Response {
                          store[put.key] = put.value;
                          return put.value;
                        },
                        [&](const Get& get) -> Response {
                          auto it = store.find(get.key);
                          if (it == store.end()) return std::nullopt;
                          return it->second;
                        },
                    },
                    request);
}

std::string show_response(const Response& response) {
  if (!response) return "Nothing";
  std::string out = "Just \"";
  for (char c : *response) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::optional<Request> parse_request_line(const std::string& line) {
  if (line.rfind("GET ", 0) == 0) {
    std::string key = line.substr(4);
    if (key.empty()) return std::nullopt;
    return Request(Get{std::move(key)});
  }
  if (line.rfind("PUT ", 0) == 0) {
    std::string rest = line.substr(4);
    auto space = rest.find(' ');
    if (space == std::string::npos || space == 0) return std::nullopt;
    return Request(Put{rest.substr(0, space), rest.substr(space + 1)});
  }
  return std::nullopt;
}

std::optional<Request> read_request(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "QUIT") return std::nullopt;
    if (auto request = parse_request_line(line)) return request;
  }
  return std::nullopt;
}

ReplicationStrategy<NullStates> null_strategy() {
  return [](Located<Request> request, NullStates state) {
    return locally(kv_primary, [request, state](const Unwrapper& un) {
      return handle_request(un(request), *un(state));
    });
  };
}

ReplicationStrategy<PrimaryBackupStates> primary_backup() {
  return [](Located<Request> request, PrimaryBackupStates states) {
    return cond(kv_primary, request,
                [request, states](const Request& decision) -> Choreo<Unit> {
                  if (std::holds_alternative<Get>(decision)) {
                    return Choreo<Unit>::pure(Unit{});
                  }
                  return comm(kv_primary, request, kv_backup)
                      .and_then([states](Located<Request> forwarded) {
                        return comm_locally(
                            kv_backup,
                            [forwarded, states](const Unwrapper& un) {
                              return handle_request(un(forwarded), *un(states.second));
                            },
                            kv_primary);
                      })
                      .map([](Located<Response>) { return Unit{}; });
                })
        .and_then([request, states](Unit) {
          return locally(kv_primary, [request, states](const Unwrapper& un) {
            return handle_request(un(request), *un(states.first));
          });
        });
  };
}

Choreo<Unit> do_backup(const LocationId& loc_a, const LocationId& loc_b,
                       Located<Request> request, Located<StoreRef> state) {
  if (loc_a == loc_b) {
    throw ConfigError("do_backup needs two distinct locations, got `" + loc_a + "` twice");
  }
  return cond(loc_a, request,
              [loc_a, loc_b, request, state](const Request& decision) -> Choreo<Unit> {
                if (std::holds_alternative<Get>(decision)) {
                  return Choreo<Unit>::pure(Unit{});
                }
                return comm(loc_a, request, loc_b)
                    .and_then([loc_a, loc_b, state](Located<Request> forwarded) {
                      return comm_locally(
                          loc_b,
                          [forwarded, state](const Unwrapper& un) {
                            return handle_request(un(forwarded), *un(state));
                          },
                          loc_a);
                    })
                    .map([](Located<Response>) { return Unit{}; });
              });
}

ReplicationStrategy<DoubleBackupStates> double_backup() {
  return [](Located<Request> request, DoubleBackupStates states) {
    return do_backup(kv_primary, kv_backup1, request, std::get<1>(states))
        .and_then([request, states](Unit) {
          return do_backup(kv_primary, kv_backup2, request, std::get<2>(states));
        })
        .and_then([request, states](Unit) {
          return locally(kv_primary, [request, states](const Unwrapper& un) {
            return handle_request(un(request), *un(std::get<0>(states)));
          });
        });
  };
}

namespace {

Choreo<Located<StoreRef>> make_store_at(const LocationId& loc, StoreRef injected) {
  return locally(loc, [injected] {
    return injected ? injected : std::make_shared<StoreState>();
  });
}

// One session turn: read a request at the client, tell everyone whether the
// session continues, process the request, loop. Ending on EOF/QUIT is a
// choreographic decision so every replica returns cleanly.
template <typename S>
Choreo<Unit> kv_loop(S states, ReplicationStrategy<S> strategy) {
  return locally(kv_client,
                 [](const Unwrapper&, LocalContext& ctx) { return read_request(ctx.input()); })
      .and_then([states, strategy](Located<std::optional<Request>> next) {
        return locally(kv_client, [next](const Unwrapper& un) { return un(next).has_value(); })
            .and_then([states, strategy, next](Located<bool> more) {
              return cond(
                  kv_client, more,
                  [states, strategy, next](bool keep_going) -> Choreo<Unit> {
                    if (!keep_going) return Choreo<Unit>::pure(Unit{});
                    return locally(kv_client,
                                   [next](const Unwrapper& un) { return *un(next); })
                        .and_then([states, strategy](Located<Request> request) {
                          return kvs<S>(std::move(request), states, strategy);
                        })
                        .and_then([](Located<Response> response) {
                          return locally(kv_client,
                                         [response](const Unwrapper& un, LocalContext& ctx) {
                                           ctx.output() << "> " << show_response(un(response))
                                                        << std::endl;
                                         });
                        })
                        .and_then([states, strategy](Located<Unit>) {
                          return kv_loop<S>(states, strategy);
                        });
                  });
            });
      });
}

}  // namespace

Choreo<Unit> kv_session_null(StoreRef primary_store) {
  return make_store_at(kv_primary, std::move(primary_store))
      .and_then([](Located<StoreRef> store) {
        return kv_loop<NullStates>(store, null_strategy());
      });
}

Choreo<Unit> kv_session_primary_backup(StoreRef primary_store, StoreRef backup_store) {
  return make_store_at(kv_primary, std::move(primary_store))
      .and_then([backup_store = std::move(backup_store)](Located<StoreRef> primary) {
        return make_store_at(kv_backup, backup_store)
            .and_then([primary](Located<StoreRef> backup) {
              return kv_loop<PrimaryBackupStates>({primary, backup}, primary_backup());
            });
      });
}

Choreo<Unit> kv_session_double_backup(StoreRef primary_store, StoreRef backup1_store,
                                      StoreRef backup2_store) {
  return make_store_at(kv_primary, std::move(primary_store))
      .and_then([backup1_store = std::move(backup1_store),
                 backup2_store = std::move(backup2_store)](Located<StoreRef> primary) {
        return make_store_at(kv_backup1, backup1_store)
            .and_then([primary, backup2_store](Located<StoreRef> backup1) {
              return make_store_at(kv_backup2, backup2_store)
                  .and_then([primary, backup1](Located<StoreRef> backup2) {
                    return kv_loop<DoubleBackupStates>({primary, backup1, backup2},
                                                       double_backup());
                  });
            });
      });
}

}  // namespace choreo::examples

namespace choreo {

nlohmann::json WireFormat<examples::Request>::encode(const examples::Request& request) {
  nlohmann::json j;
  if (const auto* put = std::get_if<examples::Put>(&request)) {
    j["tag"] = "Put";
    j["fields"] = nlohmann::json::array({put->key, put->value});
  } else {
    const auto& get = std::get<examples::Get>(request);
    j["tag"] = "Get";
    j["fields"] = nlohmann::json::array({get.key});
  }
  return j;
}

examples::Request WireFormat<examples::Request>::decode(const nlohmann::json& j) {
  detail::expect_wire(j.is_object() && j.contains("tag") && j.contains("fields"),
                      "expected {fields, tag} object");
  detail::expect_wire(j["tag"].is_string() && j["fields"].is_array(), "bad tag/fields");
  const std::string tag = j["tag"].get<std::string>();
  const auto& fields = j["fields"];
  if (tag == "Put") {
    detail::expect_wire(fields.size() == 2 && fields[0].is_string() && fields[1].is_string(),
                        "Put expects two string fields");
    return examples::Put{fields[0].get<std::string>(), fields[1].get<std::string>()};
  }
  if (tag == "Get") {
    detail::expect_wire(fields.size() == 1 && fields[0].is_string(),
                        "Get expects one string field");
    return examples::Get{fields[0].get<std::string>()};
  }
  throw CodecError("malformed wire payload: unknown Request tag `" + tag + "`");
}

}  // namespace choreo
