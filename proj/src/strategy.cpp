#include "fqst/strategy.hpp"

#include <cmath>
#include <sstream>

#include "fqst/errors.hpp"

namespace fqst {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

void validate_strategy(const BoundStrategy& strategy) {
  std::visit(Overloaded{
                 [](const DegreeBound& s) {
                   if (s.phi < 3) throw DomainError("degree bound requires phi >= 3");
                 },
                 [](const ExplicitBound& s) {
                   if (s.k < 0) throw DomainError("explicit bound requires k >= 0");
                 },
                 [](const NodeWeighted& s) {
                   if (!(s.c > 0.0) || !std::isfinite(s.c)) {
                     throw DomainError("node weight c must be positive and finite");
                   }
                 },
             },
             strategy);
}

std::string describe(const BoundStrategy& strategy) {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const DegreeBound& s) { out << "degree_bound(phi=" << s.phi << ")"; },
                 [&](const ExplicitBound& s) { out << "explicit_bound(k=" << s.k << ")"; },
                 [&](const NodeWeighted& s) { out << "node_weighted(c=" << s.c << ")"; },
             },
             strategy);
  return out.str();
}

}  // namespace fqst
