#include "examples/bookseller.hpp"

namespace choreo::examples {

int BooksellerContext::price_of(const std::string& t) const { return prices.at(t); }

std::string BooksellerContext::delivery_date_of(const std::string& t) const {
  return delivery_dates.at(t);
}

BooksellerContext default_bookseller_context() {
  BooksellerContext ctx;
  ctx.title = "Types and Programming Languages";
  ctx.prices = {
      {"Types and Programming Languages", 80},
      {"Homotopy Type Theory", 120},
  };
  ctx.delivery_dates = {
      {"Types and Programming Languages", "2023-01-01"},
      {"Homotopy Type Theory", "2023-02-02"},
  };
  ctx.budget = 100;
  return ctx;
}

Decision single_buyer_decision(const BooksellerContext& ctx) {
  return [budget = ctx.budget](Located<int> price) {
    return locally(book_buyer,
                   [price, budget](const Unwrapper& un) { return un(price) <= budget; });
  };
}

Decision two_buyer_decision(const BooksellerContext& ctx) {
  return [budget = ctx.budget](Located<int> price) {
    return comm(book_buyer, price, book_buyer2)
        .and_then([](Located<int> quoted) {
          return locally(book_buyer2,
                         [quoted](const Unwrapper& un) { return un(quoted) / 2; });
        })
        .and_then([](Located<int> contribution) {
          return comm(book_buyer2, contribution, book_buyer);
        })
        .and_then([price, budget](Located<int> contribution) {
          return locally(book_buyer, [price, contribution, budget](const Unwrapper& un) {
            return un(price) <= un(contribution) + budget;
          });
        });
  };
}

namespace {

Choreo<Located<std::optional<std::string>>> bookseller_between(const BooksellerContext& ctx,
                                                               const LocationId& buyer,
                                                               const Decision& decision) {
  return locally(buyer, [title = ctx.title] { return title; })
      .and_then([buyer](Located<std::string> title) {
        return comm(buyer, std::move(title), book_seller);
      })
      .and_then([ctx, buyer, decision](Located<std::string> title) {
        return comm_locally(
                   book_seller,
                   [ctx, title](const Unwrapper& un) { return ctx.price_of(un(title)); },
                   buyer)
            .and_then([decision](Located<int> price) { return decision(price); })
            .and_then([ctx, buyer, title](Located<bool> verdict) {
              return cond(buyer, verdict,
                          [ctx, buyer, title](bool buy)
                              -> Choreo<Located<std::optional<std::string>>> {
                            if (!buy) {
                              return locally(buyer, [] {
                                return std::optional<std::string>{};
                              });
                            }
                            return comm_locally(
                                       book_seller,
                                       [ctx, title](const Unwrapper& un) {
                                         return ctx.delivery_date_of(un(title));
                                       },
                                       buyer)
                                .and_then([buyer](Located<std::string> date) {
                                  return locally(buyer, [date](const Unwrapper& un) {
                                    return std::optional<std::string>(un(date));
                                  });
                                });
                          });
            });
      });
}

}  // namespace

Choreo<Located<std::optional<std::string>>> bookseller(const BooksellerContext& ctx,
                                                       const Decision& decision) {
  return bookseller_between(ctx, book_buyer, decision);
}

Choreo<Located<std::optional<std::string>>> bookseller_polymorphic(const BooksellerContext& ctx,
                                                                   const LocationId& buyer) {
  if (buyer == book_seller) {
    throw ConfigError("bookseller buyer must be distinct from the seller");
  }
  auto decide = [budget = ctx.budget, buyer](Located<int> price) {
    return locally(buyer, [price, budget](const Unwrapper& un) { return un(price) <= budget; });
  };
  return bookseller_between(ctx, buyer, decide);
}

}  // namespace choreo::examples
