#include <doctest.h>

#include <chrono>
#include <string>
#include <thread>
#include <vector>

#include "choreo/backend_local.hpp"
#include "choreo/network.hpp"
#include "support/script_endpoint.hpp"

using namespace choreo;
using testsupport::ScriptEndpoint;
using Event = ScriptEndpoint::Event;

namespace {
const std::vector<LocationId> ab{"a", "b"};
const std::vector<LocationId> pqr{"p", "q", "r"};
}  // namespace

TEST_CASE("send performs exactly one send effect") {
  ScriptEndpoint wire;
  run_network_on(wire, ab, "a", send("\"hi\"", "b"));
  CHECK(wire.events == std::vector<Event>{{Event::Kind::Send, "b", "\"hi\""}});
}

TEST_CASE("recv dequeues exactly one message from the named peer") {
  ScriptEndpoint wire;
  wire.feed("b", "42");
  auto got = run_network_on(wire, ab, "a", recv("b"));
  CHECK(got == "42");
  CHECK(wire.recvs() == 1);
}

TEST_CASE("run executes the local computation directly") {
  auto program = run([] { return 7; }).and_then([](int x) {
    return NetworkProgram<int>::pure(x * 6);
  });
  ScriptEndpoint wire;
  CHECK(run_network_on(wire, ab, "a", program) == 42);
  CHECK(wire.events.empty());
}

TEST_CASE("broadcast expands to one send per other configured location") {
  ScriptEndpoint wire;
  run_network_on(wire, pqr, "p", broadcast("true"));
  CHECK(wire.events == std::vector<Event>{
                           {Event::Kind::Send, "q", "true", MessageKind::Choice},
                           {Event::Kind::Send, "r", "true", MessageKind::Choice},
                       });
}

TEST_CASE("transport effects on unknown locations are configuration errors") {
  ScriptEndpoint wire;
  CHECK_THROWS_AS(run_network_on(wire, ab, "a", send("1", "nowhere")), ConfigError);
  CHECK(wire.events.empty());  // rejected before anything went out
  CHECK_THROWS_AS(run_network_on(wire, ab, "a", recv("nowhere")), ConfigError);
  CHECK_THROWS_AS(run_network_on(wire, ab, "nowhere", NetworkProgram<Unit>::pure(Unit{})),
                  ConfigError);
}

TEST_CASE("fabric construction validates its locations") {
  CHECK_THROWS_AS(make_local_fabric({}), ConfigError);
  CHECK_THROWS_AS(make_local_fabric({"a", "a"}), ConfigError);
  CHECK_THROWS_AS(make_local_fabric({""}), ConfigError);

  auto fabric = make_local_fabric({"a", "b"});
  for (const auto& from : ab) {
    for (const auto& to : ab) {
      CHECK(fabric.pending(from, to) == 0);
    }
  }
  CHECK(fabric.quiescent());
}

TEST_CASE("messages between one ordered pair stay FIFO") {
  auto fabric = make_local_fabric({"a", "b"});
  std::vector<std::string> received;
  std::thread receiver([&] {
    auto program = recv("a").and_then([](std::string first) {
      return recv("a").map([first](std::string second) {
        return std::vector<std::string>{first, second};
      });
    });
    received = run_network(fabric, "b", program);
  });
  std::thread sender([&] {
    run_network(fabric, "a", send("s1", "b").then(send("s2", "b")));
  });
  sender.join();
  receiver.join();
  CHECK(received == std::vector<std::string>{"s1", "s2"});
  CHECK(fabric.quiescent());
}

TEST_CASE("FIFO holds under randomized delivery delays") {
  auto fabric = make_local_fabric({"a", "b"}, DelayPolicy::uniform(std::chrono::milliseconds(20), 99));
  constexpr int kMessages = 8;
  std::thread sender([&] {
    auto program = NetworkProgram<Unit>::pure(Unit{});
    for (int i = 0; i < kMessages; ++i) {
      program = program.then(send(std::to_string(i), "b"));
    }
    run_network(fabric, "a", program);
  });
  std::vector<std::string> received;
  std::thread receiver([&] {
    for (int i = 0; i < kMessages; ++i) {
      received.push_back(run_network(fabric, "b", recv("a")));
    }
  });
  sender.join();
  receiver.join();
  for (int i = 0; i < kMessages; ++i) {
    CHECK(received[i] == std::to_string(i));
  }
}

TEST_CASE("a broadcast reaches every peer exactly once") {
  auto fabric = make_local_fabric(pqr);
  std::thread q([&] { run_network(fabric, "q", recv("p")); });
  std::thread r([&] { run_network(fabric, "r", recv("p")); });
  run_network(fabric, "p", broadcast("true"));
  q.join();
  r.join();

  auto log = fabric.deliveries();
  REQUIRE(log.size() == 2);
  CHECK(log[0].to == "q");
  CHECK(log[1].to == "r");
  for (const auto& d : log) {
    CHECK(d.from == "p");
    CHECK(d.kind == MessageKind::Choice);
    CHECK(d.payload == "true");
  }
  CHECK(fabric.pending("p", "p") == 0);
  CHECK(fabric.quiescent());
}

TEST_CASE("the same seed assigns the same delays") {
  auto run_once = [](std::uint64_t seed) {
    auto fabric = make_local_fabric({"a", "b"}, DelayPolicy::uniform(std::chrono::milliseconds(30), seed));
    std::thread receiver([&] {
      for (int i = 0; i < 5; ++i) run_network(fabric, "b", recv("a"));
    });
    auto program = NetworkProgram<Unit>::pure(Unit{});
    for (int i = 0; i < 5; ++i) program = program.then(send(std::to_string(i), "b"));
    run_network(fabric, "a", program);
    receiver.join();
    std::vector<long> delays;
    for (const auto& d : fabric.deliveries()) delays.push_back(d.delay.count());
    return delays;
  };
  auto first = run_once(7);
  auto second = run_once(7);
  CHECK(first == second);
  CHECK(first.size() == 5);
}

TEST_CASE("run_all returns every location's result for a pure program") {
  auto fabric = make_local_fabric(pqr);
  auto results = run_all(fabric, Choreo<int>::pure(7));
  REQUIRE(results.size() == 3);
  for (const auto& [loc, value] : results) CHECK(value == 7);
  CHECK(fabric.quiescent());
}

TEST_CASE("run_all reports the failing location and does not hang") {
  auto fabric = make_local_fabric({"a", "b"});
  // b waits for a message a never sends because a's local computation dies.
  auto c = locally("a", []() -> int { throw std::runtime_error("boom"); })
               .and_then([](Located<int> v) { return comm("a", v, "b"); });
  try {
    run_all(fabric, c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("`a`") != std::string::npos);
    CHECK(std::string(e.what()).find("boom") != std::string::npos);
  }
}

TEST_CASE("closing the fabric unblocks receivers") {
  auto fabric = make_local_fabric({"a", "b"});
  std::thread blocked([&] {
    CHECK_THROWS_AS(run_network(fabric, "b", recv("a")), TransportError);
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  fabric.close();
  blocked.join();
}
