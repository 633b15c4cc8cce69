#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rolloutkit/assignment2d.hpp"

namespace rolloutkit {

// All prices, epsilons and dual values below live in scaled units: benefits
// are pre-multiplied by price_scale = n + 1 so the whole computation stays
// in exact integer arithmetic.  A final pass at scaled epsilon 1 means
// epsilon = 1/(n+1) < 1/n in benefit units, which with integer benefits
// certifies an optimal assignment.

struct AuctionPassStats {
    std::int64_t epsilon = 0;      // scaled units
    std::int64_t rounds = 0;       // bids in this pass
    std::int64_t primal = 0;       // benefit units, assignment after the pass
    std::int64_t dual_scaled = 0;  // scaled units
};

struct AuctionResult {
    std::vector<int> assignment;       // person -> object
    std::vector<std::int64_t> prices;  // scaled units, one per object
    std::int64_t price_scale = 1;
    std::int64_t epsilon = 1;          // scaled units, final pass
    std::int64_t rounds = 0;           // total bids across passes
    std::int64_t primal = 0;           // benefit units
    std::int64_t dual_scaled = 0;
    std::vector<AuctionPassStats> passes;

    double dual() const {
        return static_cast<double>(dual_scaled) /
               static_cast<double>(price_scale);
    }
};

struct BidResult {
    int object = -1;             // best-value object
    std::int64_t new_price = 0;  // price after the raise
    std::int64_t best_value = 0;
    std::int64_t second_value = 0;  // sentinel-clamped when unique object
};

// One bid in the units of the supplied prices/benefits: picks the best-value
// allowed object and raises its price by best - second + epsilon.  Ties pick
// the lowest object index.
BidResult bid(const Assignment2DInstance& instance,
              const std::vector<std::int64_t>& prices, int person,
              std::int64_t epsilon);

// Single-pass auction at the given epsilon (benefit units; internally scaled
// and floored to an integer, never below one scaled unit).  Initial prices
// are in scaled units.  Throws Infeasible when prices escalate past the
// feasibility guard bound.
AuctionResult auction_solve(const Assignment2DInstance& instance,
                            double epsilon,
                            std::vector<std::int64_t> initial_prices = {});

// Epsilon-scaling driver: starts at max(1, ceil((n+1)C/4)) scaled units,
// divides by four each pass (warm-starting prices), stops after the pass at
// one scaled unit.  The result is an optimal assignment for integer
// benefits.  `warm_prices` seeds the first pass, e.g. from a previously
// solved nearby instance.
AuctionResult auction_scaled(const Assignment2DInstance& instance,
                             std::vector<std::int64_t> warm_prices = {});

// Single pass at one scaled epsilon unit from the given prices; with
// integer benefits the assignment is optimal.  This is the warm restart
// path: prices from a nearby solved instance converge in a few bids.
AuctionResult auction_final_pass(const Assignment2DInstance& instance,
                                 std::vector<std::int64_t> initial_prices);

// More objects than persons: every person gets assigned, objects may stay
// free.  Optimality over injections requires all-zero initial prices, so a
// nonzero price vector is rejected with PriceInitError.
AuctionResult asymmetric_solve(const Assignment2DInstance& instance,
                               std::vector<std::int64_t> initial_prices = {});

struct EpsCsViolation {
    int person = -1;
    int object = -1;          // assigned object
    std::int64_t slack = 0;   // amount by which the condition fails
    std::string detail;
};

struct EpsCsReport {
    bool satisfied = true;
    std::vector<EpsCsViolation> violations;
};

// Checks that every assigned person's value is within epsilon of their best
// value at the result's prices (all in the result's scaled units), and that
// the assignment is injective and mask-respecting.
EpsCsReport verify_eps_cs(const Assignment2DInstance& instance,
                          const AuctionResult& result);

// Sum of prices plus each person's best value at those prices, divided by
// `scale` to return benefit units.  Masked persons take the max over their
// allowed objects; a person with none raises IsolatedPerson.
double dual_value(const Assignment2DInstance& instance,
                  const std::vector<std::int64_t>& prices,
                  std::int64_t scale = 1);
std::int64_t dual_value_scaled(const Assignment2DInstance& instance,
                               const std::vector<std::int64_t>& prices,
                               std::int64_t scale);

void to_json(nlohmann::json& j, const AuctionResult& result);
void from_json(const nlohmann::json& j, AuctionResult& result);

} // namespace rolloutkit
