#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>

#include "choreo/effect_program.hpp"
#include "choreo/errors.hpp"
#include "choreo/location.hpp"
#include "choreo/wire.hpp"

namespace choreo {

struct ChoreoEffect;

namespace detail {
using ChoreoNodePtr = NodePtr<ChoreoEffect>;
}

/// Local computation at one location. Yields the computation's value,
/// located at `at` for the rest of the choreography.
struct LocalEffect {
  LocationId at;
  detail::ErasedLocal computation;

  // Typed repackaging minted where the element type is known.
  std::function<Box(Box, const LocationId&)> wrap_result;
  std::function<Box()> absent_result;
};

/// Point-to-point communication: the payload, owned by `sender`, becomes a
/// value owned by `receiver`. Self-communication degenerates to a local copy.
struct CommEffect {
  LocationId sender;
  LocationId receiver;

  // Sender-side wire bytes; reads the payload, so it faults with an
  // ownership diagnostic if the payload is not the sender's.
  std::function<std::string()> encode_payload;
  // Rebind the payload value to a new owner (direct run, self-send).
  std::function<Box(const LocationId&)> copy_payload_as;
  // Receiver side: decode wire bytes and own the result.
  std::function<Box(const std::string&, const LocationId&)> decode_and_wrap;
  std::function<Box()> absent_result;
};

/// Knowledge of choice: `decider` inspects the scrutinee it owns, every
/// participant continues with the branch selected by its value.
struct CondEffect {
  LocationId decider;

  std::function<std::string()> encode_scrutinee;
  std::function<Box()> scrutinee_value;
  std::function<Box(const std::string&)> decode_scrutinee;
  // Applies the branch function to the (boxed) scrutinee value.
  std::function<detail::ChoreoNodePtr(Box)> branches;
};

/// The global effect vocabulary of the choreography language.
struct ChoreoEffect {
  std::variant<LocalEffect, CommEffect, CondEffect> effect;
};

/// A choreography returning `A`: one program describing every participant.
template <typename A>
using Choreo = Program<ChoreoEffect, A>;

namespace detail {

template <typename T>
void check_owner_on_construction(const Located<T>& value, const LocationId& expected,
                                 const char* operation) {
  // Absent is the legitimate view of every non-owner, so only a present
  // value with the wrong owner is a construction-time error.
  if (value.is_present() && *value.owner() != expected) {
    throw OwnershipError(ownership_message(expected, value.owner(), operation));
  }
}

}  // namespace detail

/// Perform a local computation at `at`. The computation receives the unwrap
/// capability for `at` plus the host context, and its result stays at `at`.
template <typename F>
auto locally(LocationId at, F computation)
    -> Choreo<Located<detail::local_result_t<F>>> {
  using T = detail::local_result_t<F>;
  LocalEffect eff{
      std::move(at),
      detail::erase_local(std::move(computation)),
      [](Box raw, const LocationId& owner) {
        return Box(detail::LocatedAccess::make<T>(detail::unbox<T>(std::move(raw)), owner));
      },
      [] { return Box(Located<T>::absent()); },
  };
  return perform<Located<T>>(ChoreoEffect{std::move(eff)});
}

/// Communicate `payload` from `sender` to `receiver`.
template <WireSerializable T>
Choreo<Located<T>> comm(LocationId sender, Located<T> payload, LocationId receiver) {
  detail::check_owner_on_construction(payload, sender, "comm");
  CommEffect eff{
      sender,
      std::move(receiver),
      [payload, sender] {
        return encode_wire(detail::LocatedAccess::read(payload, sender, "comm send"));
      },
      [payload, sender](const LocationId& owner) {
        return Box(detail::LocatedAccess::make<T>(
            detail::LocatedAccess::read(payload, sender, "comm"), owner));
      },
      [](const std::string& wire, const LocationId& owner) {
        return Box(detail::LocatedAccess::make<T>(decode_wire<T>(wire), owner));
      },
      [] { return Box(Located<T>::absent()); },
  };
  return perform<Located<T>>(ChoreoEffect{std::move(eff)});
}

/// Compute at `sender` and ship the result to `receiver`; sugar for
/// `locally` followed by `comm`, introducing no new effect.
template <typename F>
auto comm_locally(LocationId sender, F computation, LocationId receiver)
    -> Choreo<Located<detail::local_result_t<F>>> {
  using T = detail::local_result_t<F>;
  static_assert(WireSerializable<T>, "comm_locally result must be wire-serializable");
  return locally(sender, std::move(computation))
      .and_then([sender, receiver = std::move(receiver)](Located<T> value) {
        return comm(sender, std::move(value), receiver);
      });
}

/// Choreographic conditional. `decider` owns the scrutinee; `branch_fn` maps
/// each scrutinee value to the follow-up choreography and must be total on
/// the values that can occur at run time.
template <WireSerializable S, typename F>
auto cond(LocationId decider, Located<S> scrutinee, F branch_fn)
    -> Choreo<typename std::invoke_result_t<F, S>::value_type> {
  using BranchProgram = std::invoke_result_t<F, S>;
  using B = typename BranchProgram::value_type;
  static_assert(std::is_same_v<BranchProgram, Choreo<B>>,
                "cond branches must return a Choreo");
  detail::check_owner_on_construction(scrutinee, decider, "cond");
  CondEffect eff{
      decider,
      [scrutinee, decider] {
        return encode_wire(detail::LocatedAccess::read(scrutinee, decider, "cond broadcast"));
      },
      [scrutinee, decider] {
        return Box(detail::LocatedAccess::read(scrutinee, decider, "cond"));
      },
      [](const std::string& wire) { return Box(decode_wire<S>(wire)); },
      [branch_fn = std::move(branch_fn)](Box value) {
        return detail::ProgramAccess::node(branch_fn(detail::unbox<S>(std::move(value))));
      },
  };
  return perform<B>(ChoreoEffect{std::move(eff)});
}

/// Observes each choreography effect as the direct interpreter reaches it,
/// in program order (branch effects included).
using ChoreoObserver = std::function<void(const ChoreoEffect&)>;

namespace detail {

Box run_choreo_erased(const ChoreoNodePtr& node, LocalContext& ctx,
                      const ChoreoObserver& observer);

}  // namespace detail

/// Direct, single-threaded semantics: every location's computation executes
/// in this process, communication is a value copy and conditionals run the
/// chosen branch. The semantic oracle projection is tested against.
template <typename A>
A run_choreo(const Choreo<A>& choreography, LocalContext ctx = LocalContext(),
             const ChoreoObserver& observer = {}) {
  return detail::unbox<A>(detail::run_choreo_erased(
      detail::ProgramAccess::node(choreography), ctx, observer));
}

}  // namespace choreo
