#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "choreo/choreo.hpp"

namespace choreo::examples {

inline const LocationId book_buyer = "buyer";
inline const LocationId book_buyer2 = "buyer2";
inline const LocationId book_seller = "seller";

/// Everything the participants bring to the protocol: the title the buyer
/// wants, the seller's catalog and delivery calendar, and the buyer's
/// budget.
struct BooksellerContext {
  std::string title;
  std::map<std::string, int> prices;
  std::map<std::string, std::string> delivery_dates;
  int budget = 0;

  int price_of(const std::string& t) const;
  std::string delivery_date_of(const std::string& t) const;
};

/// Demo catalog: one affordable title, one that busts the budget.
BooksellerContext default_bookseller_context();

/// How the buyer decides whether to buy, given the quoted price it holds.
/// A sub-choreography, so the decision may involve other participants.
using Decision = std::function<Choreo<Located<bool>>(Located<int>)>;

/// Compare against the budget locally at the buyer.
Decision single_buyer_decision(const BooksellerContext& ctx);

/// Ask a second buyer to contribute half the price, then compare.
Decision two_buyer_decision(const BooksellerContext& ctx);

/// The bookseller protocol: the buyer names a title, the seller quotes a
/// price, the decision sub-choreography accepts or declines, and a purchase
/// yields the delivery date at the buyer.
Choreo<Located<std::optional<std::string>>> bookseller(const BooksellerContext& ctx,
                                                       const Decision& decision);

/// Location-polymorphic variant: the same protocol for an arbitrary buyer
/// location (with the budget decision made locally there). Rejects
/// buyer == seller.
Choreo<Located<std::optional<std::string>>> bookseller_polymorphic(const BooksellerContext& ctx,
                                                                   const LocationId& buyer);

}  // namespace choreo::examples
