#include "choreo/choreography.hpp"

namespace choreo::detail {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

Box run_choreo_erased(const ChoreoNodePtr& node, LocalContext& ctx,
                      const ChoreoObserver& observer) {
  auto handler = [&](const ChoreoEffect& eff) -> Step<ChoreoEffect> {
    if (observer) observer(eff);
    return std::visit(
        Overloaded{
            [&](const LocalEffect& local) -> Step<ChoreoEffect> {
              Unwrapper capability = CapabilityAccess::make(local.at);
              Box raw = local.computation(capability, ctx);
              return Box(local.wrap_result(std::move(raw), local.at));
            },
            [&](const CommEffect& comm) -> Step<ChoreoEffect> {
              // Placement-free semantics: the value simply changes owner.
              return Box(comm.copy_payload_as(comm.receiver));
            },
            [&](const CondEffect& cond) -> Step<ChoreoEffect> {
              // Splice the chosen branch into the interpreter loop so that
              // conditionals inside unbounded loops cost no call stack.
              return cond.branches(cond.scrutinee_value());
            },
        },
        eff.effect);
  };
  return run_loop<ChoreoEffect>(node, handler);
}

}  // namespace choreo::detail
