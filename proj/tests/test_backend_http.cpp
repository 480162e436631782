#include <doctest.h>

#include <httplib.h>

#include <chrono>
#include <future>
#include <string>
#include <thread>

#include "choreo/backend_http.hpp"
#include "choreo/backend_local.hpp"
#include "examples/bookseller.hpp"
#include "support/subprocess.hpp"

using namespace choreo;
using testsupport::pick_free_port;

namespace {

HttpConfig two_peer_config(int port_a, int port_b) {
  return make_http_config({
      {"a", {"127.0.0.1", static_cast<std::uint16_t>(port_a)}},
      {"b", {"127.0.0.1", static_cast<std::uint16_t>(port_b)}},
  });
}

}  // namespace

TEST_CASE("http config construction validates its entries") {
  CHECK_NOTHROW(make_http_config({
      {"buyer", {"alice.some-school.edu", 3000}},
      {"seller", {"bookstore.haskell.org", 4000}},
  }));
  CHECK_THROWS_AS(make_http_config({}), ConfigError);
  CHECK_THROWS_AS(make_http_config({{"client", {"h", 1}}, {"client", {"h", 2}}}), ConfigError);
  CHECK_THROWS_AS(make_http_config({{"client", {"h", 0}}}), ConfigError);
  CHECK_THROWS_AS(make_http_config({{"a", {"h", 5}}, {"b", {"h", 5}}}), ConfigError);
  CHECK_THROWS_AS(two_peer_config(1, 2).address_of("zebra"), ConfigError);
}

TEST_CASE("a posted message lands in the per-sender inbox") {
  int port_a = pick_free_port();
  int port_b = pick_free_port();
  auto config = two_peer_config(port_a, port_b);

  auto receiver = std::async(std::launch::async, [&] {
    return run_network(config, "b", recv("a"));
  });

  // Raw client post, exactly the wire protocol.
  httplib::Client cli("127.0.0.1", port_b);
  httplib::Result res;
  for (int i = 0; i < 50; ++i) {
    res = cli.Post("/msg/a", "\"TAPL\"", "application/octet-stream");
    if (res && res->status == 200) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(receiver.get() == "\"TAPL\"");
}

TEST_CASE("messages from unknown senders are rejected with 400 and not buffered") {
  int port_a = pick_free_port();
  int port_b = pick_free_port();
  auto config = two_peer_config(port_a, port_b);

  auto receiver = std::async(std::launch::async, [&] {
    return run_network(config, "b", recv("a"));
  });

  httplib::Client cli("127.0.0.1", port_b);
  httplib::Result bogus;
  for (int i = 0; i < 50; ++i) {
    bogus = cli.Post("/msg/mallory", "tainted", "application/octet-stream");
    if (bogus) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  REQUIRE(bogus);
  CHECK(bogus->status == 400);

  auto genuine = cli.Post("/msg/a", "1", "application/octet-stream");
  REQUIRE(genuine);
  CHECK(genuine->status == 200);
  CHECK(receiver.get() == "1");
}

TEST_CASE("two http endpoints run a full exchange") {
  int port_a = pick_free_port();
  int port_b = pick_free_port();
  auto config = two_peer_config(port_a, port_b);

  auto side_b = std::async(std::launch::async, [&] {
    auto program = recv("a").and_then([](std::string payload) {
      return send(payload + "!", "a").map([payload](Unit) { return payload; });
    });
    return run_network(config, "b", program);
  });
  auto side_a = std::async(std::launch::async, [&] {
    return run_network(config, "a", send("ping", "b").then(recv("b")));
  });
  CHECK(side_a.get() == "ping!");
  CHECK(side_b.get() == "ping");
}

TEST_CASE("sends retry until a late peer starts listening") {
  int port_a = pick_free_port();
  int port_b = pick_free_port();
  auto config = two_peer_config(port_a, port_b);

  auto sender = std::async(std::launch::async, [&] {
    run_network(config, "a", send("late", "b"));
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(400));
  auto got = run_network(config, "b", recv("a"));
  sender.get();
  CHECK(got == "late");
}

TEST_CASE("the retry budget eventually gives up") {
  auto config = make_http_config(
      {
          {"a", {"127.0.0.1", static_cast<std::uint16_t>(pick_free_port())}},
          {"b", {"127.0.0.1", static_cast<std::uint16_t>(pick_free_port())}},
      },
      RetryBudget{2, std::chrono::milliseconds(10)});
  CHECK_THROWS_AS(run_network(config, "a", send("x", "b")), TransportError);
}

TEST_CASE("bookseller over http matches the local backend") {
  using namespace choreo::examples;
  auto ctx = default_bookseller_context();
  auto build = [&] { return bookseller(ctx, single_buyer_decision(ctx)); };

  auto fabric = make_local_fabric({book_buyer, book_seller});
  auto local_results = run_all(fabric, build());
  auto local_outcome = local_results.at(book_buyer).reveal(book_buyer);

  auto config = make_http_config({
      {book_buyer, {"127.0.0.1", static_cast<std::uint16_t>(pick_free_port())}},
      {book_seller, {"127.0.0.1", static_cast<std::uint16_t>(pick_free_port())}},
  });
  auto seller_side = std::async(std::launch::async, [&] {
    run_choreography(config, build(), book_seller);
  });
  auto http_outcome =
      run_choreography(config, build(), book_buyer).reveal(book_buyer);
  seller_side.get();

  REQUIRE(local_outcome.has_value());
  CHECK(local_outcome == http_outcome);
  CHECK(*http_outcome == "2023-01-01");
}
