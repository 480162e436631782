#include <benchmark/benchmark.h>

#include <functional>
#include <string>

#include "choreo/choreo.hpp"
#include "examples/bookseller.hpp"
#include "examples/kv_store.hpp"

using namespace choreo;

namespace {

struct Tick {};

// Interpreter throughput over a long sequential effect chain.
void BM_InterpretChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::function<Program<Tick, int>(int)> chain = [&chain](int remaining) {
    if (remaining == 0) return Program<Tick, int>::pure(0);
    return perform<int>(Tick{}).and_then([&chain, remaining](int) {
      return chain(remaining - 1);
    });
  };
  auto handler = [](const Tick&) { return Box(0); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(interpret<int>(handler, chain(n)));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_InterpretChain)->Arg(1000)->Arg(100000);

// Cost of projecting and dry-running the bookseller at the seller endpoint.
// The seller receives the title, then the broadcast decision.
void BM_ProjectBookseller(benchmark::State& state) {
  using namespace choreo::examples;
  auto ctx = default_bookseller_context();

  class Scripted final : public Endpoint {
   public:
    explicit Scripted(std::vector<std::string> replies) : replies_(std::move(replies)) {}
    void send(const LocationId&, const std::string&, MessageKind) override {}
    std::string recv(const LocationId&) override { return replies_.at(next_++); }

   private:
    std::vector<std::string> replies_;
    std::size_t next_ = 0;
  };
  const std::vector<LocationId> locations{book_buyer, book_seller};

  for (auto _ : state) {
    auto program = epp(bookseller(ctx, single_buyer_decision(ctx)), book_seller);
    Scripted wire({encode_wire(ctx.title), encode_wire(true)});
    benchmark::DoNotOptimize(run_network_on(wire, locations, book_seller, program));
  }
}
BENCHMARK(BM_ProjectBookseller);

void BM_EncodeDecodeRequest(benchmark::State& state) {
  examples::Request request = examples::Put{"some key", "some reasonably sized value"};
  for (auto _ : state) {
    auto bytes = encode_wire(request);
    benchmark::DoNotOptimize(decode_wire<examples::Request>(bytes));
  }
}
BENCHMARK(BM_EncodeDecodeRequest);

// Full local-backend round trip: one put/get session across four threads.
void BM_LocalKvSession(benchmark::State& state) {
  using namespace choreo::examples;
  const std::vector<LocationId> locations{kv_client, kv_primary, kv_backup};
  for (auto _ : state) {
    std::istringstream in("PUT a 1\nGET a\n");
    std::ostringstream out;
    std::istringstream none1, none2;
    std::ostringstream sink1, sink2;
    auto fabric = make_local_fabric(locations);
    run_all(fabric, kv_session_primary_backup(), [&](const LocationId& loc) {
      if (loc == kv_client) return LocalContext(in, out);
      if (loc == kv_primary) return LocalContext(none1, sink1);
      return LocalContext(none2, sink2);
    });
    benchmark::DoNotOptimize(out.str());
  }
}
BENCHMARK(BM_LocalKvSession)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
