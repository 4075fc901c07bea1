#pragma once

#include <string>
#include <variant>

namespace fqst {

// Every Steiner point has degree >= phi (phi >= 3).
struct DegreeBound {
  int phi = 3;
};

// At most k Steiner points.
struct ExplicitBound {
  int k = 0;
};

// Each Steiner point costs c > 0; the objective is L(T) + c|S|.
struct NodeWeighted {
  double c = 1.0;
};

using BoundStrategy = std::variant<DegreeBound, ExplicitBound, NodeWeighted>;

// Throws DomainError when phi < 3, k < 0 or c <= 0.
void validate_strategy(const BoundStrategy& strategy);

std::string describe(const BoundStrategy& strategy);

}  // namespace fqst
