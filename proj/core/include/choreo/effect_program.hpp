#pragma once

#include <any>
#include <functional>
#include <memory>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "choreo/errors.hpp"

namespace choreo {

/// Type-erased value travelling between an effect and its continuation.
/// Typed wrappers box/unbox at the API boundary; a failed unbox is a bug in
/// the handler, not a protocol state.
using Box = std::any;

/// The unit value, for programs run purely for their effects.
using Unit = std::monostate;

namespace detail {

template <typename T>
T unbox(Box value) {
  if (auto* p = std::any_cast<T>(&value)) {
    return std::move(*p);
  }
  throw InternalError("effect result has unexpected type (handler/continuation mismatch)");
}

// A program is a DAG of immutable nodes:
//   Pure    -- a final value
//   Perform -- a single effect request; its result feeds the enclosing Bind
//   Bind    -- run `inner`, then feed its value to `next`
//
// Continuations build the rest of the program on demand, so unbounded loops
// (recursion through a continuation) stay incremental: each interpreter step
// materializes O(1) nodes.
template <typename Effect>
struct Node;

template <typename Effect>
using NodePtr = std::shared_ptr<const Node<Effect>>;

template <typename Effect>
using Kont = std::function<NodePtr<Effect>(Box)>;

template <typename Effect>
struct Node {
  struct Pure {
    Box value;
  };
  struct Perform {
    Effect effect;
  };
  struct Bind {
    NodePtr<Effect> inner;
    Kont<Effect> next;
  };

  std::variant<Pure, Perform, Bind> repr;

  explicit Node(std::variant<Pure, Perform, Bind> r) : repr(std::move(r)) {}

  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  // Long Bind spines are released iteratively; the default recursive
  // shared_ptr teardown would overflow the stack on 100k+ step programs.
  ~Node() {
    auto* bind = std::get_if<Bind>(&repr);
    if (!bind) return;
    NodePtr<Effect> cursor = std::move(bind->inner);
    while (cursor && cursor.use_count() == 1) {
      auto* inner_bind = std::get_if<Bind>(&const_cast<Node*>(cursor.get())->repr);
      if (!inner_bind) break;
      NodePtr<Effect> next = std::move(inner_bind->inner);
      cursor = std::move(next);
    }
  }
};

template <typename Effect>
NodePtr<Effect> make_pure(Box value) {
  using N = Node<Effect>;
  return std::make_shared<const N>(typename N::Pure{std::move(value)});
}

template <typename Effect>
NodePtr<Effect> make_perform(Effect effect) {
  using N = Node<Effect>;
  return std::make_shared<const N>(typename N::Perform{std::move(effect)});
}

template <typename Effect>
NodePtr<Effect> make_bind(NodePtr<Effect> inner, Kont<Effect> next) {
  using N = Node<Effect>;
  return std::make_shared<const N>(typename N::Bind{std::move(inner), std::move(next)});
}

}  // namespace detail

/// What a handler may do with one effect: produce its result now, or splice
/// in a sub-program whose final value becomes the effect's result. Splicing
/// keeps recursive interpretation (e.g. conditionals inside unbounded loops)
/// on the flat interpreter loop instead of the call stack.
template <typename Effect>
using Step = std::variant<Box, detail::NodePtr<Effect>>;

namespace detail {

// The single interpreter loop behind every runner. Handler maps an effect to
// a Step. Iterative: an explicit continuation stack, never deeper than the
// static nesting of the program text.
template <typename Effect, typename Handler>
Box run_loop(NodePtr<Effect> node, Handler&& handler) {
  using N = Node<Effect>;
  std::vector<Kont<Effect>> stack;
  Box value;
  while (true) {
    if (auto* pure = std::get_if<typename N::Pure>(&node->repr)) {
      value = pure->value;
    } else if (auto* perform = std::get_if<typename N::Perform>(&node->repr)) {
      Step<Effect> step = handler(perform->effect);
      if (auto* splice = std::get_if<NodePtr<Effect>>(&step)) {
        node = std::move(*splice);
        continue;
      }
      value = std::move(std::get<Box>(step));
    } else {
      const auto& bind = std::get<typename N::Bind>(node->repr);
      stack.push_back(bind.next);
      node = bind.inner;
      continue;
    }
    if (stack.empty()) return value;
    Kont<Effect> k = std::move(stack.back());
    stack.pop_back();
    node = k(std::move(value));
  }
}

}  // namespace detail

template <typename Effect, typename A>
class Program;

namespace detail {
struct ProgramAccess;
}

/// Lift one effect into a program. `Result` is the type the handler must
/// produce for this effect; interpreting the returned program invokes the
/// handler exactly once.
template <typename Result, typename Effect>
Program<Effect, Result> perform(Effect effect);

/// A computation that interleaves pure values with requests to the effect
/// vocabulary `Effect`, returning an `A`. Immutable and freely shareable
/// across threads; interpretation is single-threaded per call.
template <typename Effect, typename A>
class Program {
 public:
  using value_type = A;
  using effect_type = Effect;

  static Program pure(A value) {
    return Program(detail::make_pure<Effect>(Box(std::move(value))));
  }

  /// Monadic sequencing: run this program, feed its value to `k`, continue
  /// with the program `k` returns. A program can be interpreted many times
  /// (once per projected location, for one), so `k` is invoked through a
  /// const path and must not consume its captures.
  template <typename K>
  auto and_then(K k) const {
    using Next = std::invoke_result_t<K, A>;
    using B = typename Next::value_type;
    static_assert(std::is_same_v<Next, Program<Effect, B>>,
                  "and_then continuation must return a Program over the same effect type");
    detail::Kont<Effect> next = [k = std::move(k)](Box value) {
      return k(detail::unbox<A>(std::move(value))).node_;
    };
    return Program<Effect, B>(detail::make_bind<Effect>(node_, std::move(next)));
  }

  /// Map a plain function over the result.
  template <typename F>
  auto map(F f) const {
    using B = std::invoke_result_t<F, A>;
    return and_then([f = std::move(f)](A value) {
      return Program<Effect, B>::pure(f(std::move(value)));
    });
  }

  /// Sequence, discarding this program's result.
  template <typename B>
  Program<Effect, B> then(Program<Effect, B> next) const {
    return and_then([next = std::move(next)](A&&) { return next; });
  }

 private:
  explicit Program(detail::NodePtr<Effect> node) : node_(std::move(node)) {}

  detail::NodePtr<Effect> node_;

  template <typename, typename>
  friend class Program;
  template <typename Result, typename E>
  friend Program<E, Result> perform(E effect);
  friend struct detail::ProgramAccess;
};

namespace detail {

// Internal bridge between the typed surface and the erased node graph.
struct ProgramAccess {
  template <typename Effect, typename A>
  static const NodePtr<Effect>& node(const Program<Effect, A>& p) {
    return p.node_;
  }
  template <typename A, typename Effect>
  static Program<Effect, A> wrap(NodePtr<Effect> node) {
    return Program<Effect, A>(std::move(node));
  }
};

}  // namespace detail

template <typename Result, typename Effect>
Program<Effect, Result> perform(Effect effect) {
  return Program<Effect, Result>(detail::make_perform<Effect>(std::move(effect)));
}

/// Handler step that splices `program` in place of the current effect; the
/// program's final value (which must have the effect's result type) becomes
/// the effect's result.
template <typename Effect, typename A>
Step<Effect> splice(const Program<Effect, A>& program) {
  return Step<Effect>(detail::ProgramAccess::node(program));
}

/// Fold a handler over a program. The handler receives each performed effect
/// in program order and returns either its boxed result or a `Step` splice.
/// `Return` values yield without any handler call. Iterative: safe for
/// programs of 100k+ sequential effects.
template <typename A, typename Effect, typename Handler>
A interpret(Handler&& handler, const Program<Effect, A>& program) {
  using HandlerResult = std::invoke_result_t<Handler, const Effect&>;
  Box result;
  if constexpr (std::is_same_v<HandlerResult, Step<Effect>>) {
    result = detail::run_loop<Effect>(detail::ProgramAccess::node(program), handler);
  } else {
    static_assert(std::is_same_v<HandlerResult, Box>,
                  "handler must return choreo::Box or choreo::Step<Effect>");
    auto stepped = [&handler](const Effect& e) -> Step<Effect> { return handler(e); };
    result = detail::run_loop<Effect>(detail::ProgramAccess::node(program), stepped);
  }
  return detail::unbox<A>(std::move(result));
}

}  // namespace choreo
