#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rigmatch/double_sim.hpp"

namespace rigmatch {

// The ms-size product was over the guard; carries the estimate.
class OracleGuardError : public std::runtime_error {
 public:
  OracleGuardError(double estimate, const std::string& what)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

struct OracleOptions {
  double guard_limit = 1e7;                   // max product of ms cardinalities
  std::optional<std::uint64_t> max_matches;   // for capped count spot checks
};

// Reference answer: nested loops over the match sets in qid order, every query
// edge tested through EdgeMatchTester the moment both endpoints are bound.
// Independent of the simulation/RIG/enumeration path. Tuples come out in
// lexicographic qid-major order.
std::vector<std::vector<NodeId>> brute_force_oracle(const PatternQuery& q, const DataGraph& g,
                                                    const ReachIndex& ix,
                                                    const OracleOptions& options = {});

}  // namespace rigmatch
