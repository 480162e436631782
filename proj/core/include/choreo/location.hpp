#pragma once

#include <any>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "choreo/effect_program.hpp"
#include "choreo/errors.hpp"

namespace choreo {

/// A participant in a choreography. Compared exactly and case-sensitively.
using LocationId = std::string;

namespace detail {
struct LocatedAccess;
struct CapabilityAccess;
}  // namespace detail

/// A value pinned to one location. Either `Present(value, owner)` or
/// `Absent` — the view every other location has of it. Present values are
/// readable only through the unwrap capability handed to local computations
/// at the owning location.
template <typename T>
class Located {
 public:
  /// The default-constructed value is Absent.
  Located() = default;

  static Located absent() { return Located(); }

  bool is_present() const { return value_ != nullptr; }

  /// The owning location, or nullopt for Absent.
  const std::optional<LocationId>& owner() const { return owner_; }

  /// Ownership-checked read for code *outside* a choreography (result
  /// extraction after a run, assertions in tests). Inside a choreography,
  /// use the unwrap capability passed to `locally`.
  T reveal(const LocationId& viewer) const;

 private:
  Located(std::shared_ptr<const T> value, LocationId owner)
      : value_(std::move(value)), owner_(std::move(owner)) {}

  std::shared_ptr<const T> value_;
  std::optional<LocationId> owner_;

  friend struct detail::LocatedAccess;
};

/// Pin `value` to `owner`.
template <typename T>
Located<T> wrap(T value, LocationId owner);

namespace detail {

inline std::string ownership_message(const LocationId& accessor,
                                     const std::optional<LocationId>& owner,
                                     const std::string& operation) {
  std::string msg = "location `" + accessor + "` attempted to read a value it does not own";
  msg += " (operation: " + operation;
  if (owner) {
    msg += ", owner: `" + *owner + "`";
  } else {
    msg += ", value is absent";
  }
  msg += ")";
  return msg;
}

struct LocatedAccess {
  template <typename T>
  static Located<T> make(T value, LocationId owner) {
    return Located<T>(std::make_shared<const T>(std::move(value)), std::move(owner));
  }

  // Checked read used by the interpreters; `operation` names the construct
  // doing the read so ownership diagnostics are precise.
  template <typename T>
  static const T& read(const Located<T>& v, const LocationId& accessor,
                       const std::string& operation) {
    if (!v.is_present() || *v.owner() != accessor) {
      throw OwnershipError(ownership_message(accessor, v.owner(), operation));
    }
    return *v.value_;
  }
};

}  // namespace detail

template <typename T>
T Located<T>::reveal(const LocationId& viewer) const {
  return detail::LocatedAccess::read(*this, viewer, "reveal");
}

template <typename T>
Located<T> wrap(T value, LocationId owner) {
  return detail::LocatedAccess::make<T>(std::move(value), std::move(owner));
}

/// The unwrap capability: reads located values owned by `location()`.
/// Handed to local computations by the interpreters; not constructible by
/// user code, and must not escape the computation it is passed to.
class Unwrapper {
 public:
  const LocationId& location() const { return location_; }

  template <typename T>
  T operator()(const Located<T>& v) const {
    return detail::LocatedAccess::read(v, location_, "unwrap");
  }

  template <typename T>
  T unwrap(const Located<T>& v) const {
    return (*this)(v);
  }

 private:
  explicit Unwrapper(LocationId location) : location_(std::move(location)) {}

  LocationId location_;

  friend struct detail::CapabilityAccess;
};

namespace detail {

struct CapabilityAccess {
  static Unwrapper make(LocationId location) { return Unwrapper(std::move(location)); }
};

}  // namespace detail

/// Host facilities a local computation may use. Backends bind one per
/// location; tests substitute string streams.
class LocalContext {
 public:
  LocalContext() : in_(&std::cin), out_(&std::cout) {}
  LocalContext(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}

  std::istream& input() const { return *in_; }
  std::ostream& output() const { return *out_; }

 private:
  std::istream* in_;
  std::ostream* out_;
};

namespace detail {

// Canonical erased form of a local computation.
using ErasedLocal = std::function<Box(const Unwrapper&, LocalContext&)>;

// Accepts `f(un, ctx)`, `f(un)` or `f()`; void-returning bodies yield Unit.
template <typename F>
ErasedLocal erase_local(F f) {
  return [f = std::move(f)](const Unwrapper& un, LocalContext& ctx) -> Box {
    auto invoke = [&]() -> decltype(auto) {
      if constexpr (std::is_invocable_v<const F&, const Unwrapper&, LocalContext&>) {
        return f(un, ctx);
      } else if constexpr (std::is_invocable_v<const F&, const Unwrapper&>) {
        return f(un);
      } else {
        static_assert(std::is_invocable_v<const F&>,
                      "local computation must be callable as f(unwrapper, context), "
                      "f(unwrapper) or f()");
        return f();
      }
    };
    if constexpr (std::is_void_v<decltype(invoke())>) {
      invoke();
      return Box(Unit{});
    } else {
      return Box(invoke());
    }
  };
}

template <typename F>
struct local_result {
 private:
  static auto probe() {
    if constexpr (std::is_invocable_v<const F&, const Unwrapper&, LocalContext&>) {
      return std::type_identity<std::invoke_result_t<const F&, const Unwrapper&, LocalContext&>>{};
    } else if constexpr (std::is_invocable_v<const F&, const Unwrapper&>) {
      return std::type_identity<std::invoke_result_t<const F&, const Unwrapper&>>{};
    } else {
      return std::type_identity<std::invoke_result_t<const F&>>{};
    }
  }
  using probed = typename decltype(probe())::type;

 public:
  using type = std::conditional_t<std::is_void_v<probed>, Unit, probed>;
};

template <typename F>
using local_result_t = typename local_result<F>::type;

}  // namespace detail

}  // namespace choreo
