#include "choreo/projection.hpp"

namespace choreo::detail {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

using NetNode = NodePtr<NetworkEffect>;

NetNode project_effect(const ChoreoEffect& eff, const LocationId& self) {
  return std::visit(
      Overloaded{
          [&](const LocalEffect& local) -> NetNode {
            if (local.at == self) {
              NetNode run = make_perform<NetworkEffect>(
                  NetworkEffect(RunEffect{local.computation}));
              return make_bind<NetworkEffect>(
                  std::move(run), [wrap = local.wrap_result, at = local.at](Box raw) {
                    return make_pure<NetworkEffect>(wrap(std::move(raw), at));
                  });
            }
            return make_pure<NetworkEffect>(local.absent_result());
          },
          [&](const CommEffect& comm) -> NetNode {
            if (comm.sender == comm.receiver && comm.sender == self) {
              // Self-send: a local copy, no wire traffic. A literal
              // send-then-recv would deadlock a sequential endpoint.
              return make_pure<NetworkEffect>(comm.copy_payload_as(self));
            }
            if (comm.sender == self) {
              NetNode send = make_perform<NetworkEffect>(
                  NetworkEffect(SendEffect{comm.encode_payload(), comm.receiver}));
              return make_bind<NetworkEffect>(
                  std::move(send), [absent = comm.absent_result](Box) {
                    return make_pure<NetworkEffect>(absent());
                  });
            }
            if (comm.receiver == self) {
              NetNode recv = make_perform<NetworkEffect>(
                  NetworkEffect(RecvEffect{comm.sender}));
              return make_bind<NetworkEffect>(
                  std::move(recv),
                  [decode = comm.decode_and_wrap, owner = comm.receiver](Box wire) {
                    return make_pure<NetworkEffect>(
                        decode(unbox<std::string>(std::move(wire)), owner));
                  });
            }
            return make_pure<NetworkEffect>(comm.absent_result());
          },
          [&](const CondEffect& cond) -> NetNode {
            if (cond.decider == self) {
              NetNode announce = make_perform<NetworkEffect>(
                  NetworkEffect(BroadcastEffect{cond.encode_scrutinee()}));
              return make_bind<NetworkEffect>(
                  std::move(announce),
                  [branches = cond.branches, value = cond.scrutinee_value, self](Box) {
                    return project_erased(branches(value()), self);
                  });
            }
            NetNode ask = make_perform<NetworkEffect>(
                NetworkEffect(RecvEffect{cond.decider}));
            return make_bind<NetworkEffect>(
                std::move(ask),
                [branches = cond.branches, decode = cond.decode_scrutinee, self](Box wire) {
                  return project_erased(branches(decode(unbox<std::string>(std::move(wire)))),
                                        self);
                });
          },
      },
      eff.effect);
}

}  // namespace

NetNode project_erased(const ChoreoNodePtr& node, const LocationId& self) {
  using N = Node<ChoreoEffect>;
  if (const auto* pure = std::get_if<typename N::Pure>(&node->repr)) {
    return make_pure<NetworkEffect>(pure->value);
  }
  if (const auto* perform = std::get_if<typename N::Perform>(&node->repr)) {
    return project_effect(perform->effect, self);
  }
  const auto& bind = std::get<typename N::Bind>(node->repr);
  // The continuation is projected on demand, once its input value exists.
  return make_bind<NetworkEffect>(
      project_erased(bind.inner, self), [next = bind.next, self](Box value) {
        return project_erased(next(std::move(value)), self);
      });
}

}  // namespace choreo::detail
