#include "examples/registry.hpp"

#include <fstream>
#include <sstream>

#include "examples/bookseller.hpp"
#include "examples/kv_store.hpp"

namespace choreo::examples {

namespace {

std::string show_outcome(const std::optional<std::string>& outcome) {
  // Same rendering as KV responses: Nothing / Just "...".
  return show_response(outcome);
}

Choreo<Unit> bookseller_demo(Decision decision) {
  auto ctx = default_bookseller_context();
  return bookseller(ctx, decision)
      .and_then([](Located<std::optional<std::string>> outcome) {
        return locally(book_buyer, [outcome](const Unwrapper& un, LocalContext& io) {
          io.output() << show_outcome(un(outcome)) << std::endl;
        });
      })
      .map([](Located<Unit>) { return Unit{}; });
}

Choreo<Unit> bookseller_poly_demo(const LocationId& buyer) {
  auto ctx = default_bookseller_context();
  return bookseller_polymorphic(ctx, buyer)
      .and_then([buyer](Located<std::optional<std::string>> outcome) {
        return locally(buyer, [outcome](const Unwrapper& un, LocalContext& io) {
          io.output() << show_outcome(un(outcome)) << std::endl;
        });
      })
      .map([](Located<Unit>) { return Unit{}; });
}

}  // namespace

const std::vector<ExampleInfo>& all_examples() {
  static const std::vector<ExampleInfo> table = {
      {"bookseller",
       {book_buyer, book_seller},
       [] { return bookseller_demo(single_buyer_decision(default_bookseller_context())); }},
      {"bookseller-ho",
       {book_buyer, book_seller, book_buyer2},
       [] { return bookseller_demo(two_buyer_decision(default_bookseller_context())); }},
      {"bookseller-poly",
       {"alice", book_seller},
       [] { return bookseller_poly_demo("alice"); }},
      {"kvs-null", {kv_client, kv_primary}, [] { return kv_session_null(); }},
      {"kvs-primary-backup",
       {kv_client, kv_primary, kv_backup},
       [] { return kv_session_primary_backup(); }},
      {"kvs-double-backup",
       {kv_client, kv_primary, kv_backup1, kv_backup2},
       [] { return kv_session_double_backup(); }},
  };
  return table;
}

const ExampleInfo* find_example(const std::string& name) {
  for (const auto& example : all_examples()) {
    if (example.name == name) return &example;
  }
  return nullptr;
}

HttpConfig load_http_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file: " + path);

  std::vector<std::pair<LocationId, HostPort>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string location, host;
    long port = 0;
    if (!(fields >> location)) continue;  // blank or comment-only line
    if (!(fields >> host >> port)) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected `<location> <host> <port>`");
    }
    std::string extra;
    if (fields >> extra) {
      throw ConfigError("config line " + std::to_string(line_no) + ": trailing junk `" +
                        extra + "`");
    }
    if (port < 1 || port > 65535) {
      throw ConfigError("config line " + std::to_string(line_no) + ": port out of range");
    }
    entries.emplace_back(location, HostPort{host, static_cast<std::uint16_t>(port)});
  }
  return make_http_config(entries);
}

}  // namespace choreo::examples
