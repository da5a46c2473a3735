#pragma once

#include "tropdeg/toric.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tropdeg::fixtures {

/// Fan of P^2: rays e1, e2, e3 = (-1,-1).
ComplexPtr p2();
/// Fan of P^1 x P^1: rays e1, e2, -e1, -e2.
ComplexPtr p1xp1();
/// Fan of the first Hirzebruch surface: e1, e12 = (1,1), e2, e3 = (-1,-1).
ComplexPtr hirzebruch1();
/// Fan of P^3: e1, e2, e3, e4 = (-1,-1,-1).
ComplexPtr p3();
/// Three rays O, P, Q in a line, O -> 2, P, Q -> -1.
ComplexPtr elliptic();

/// Names accepted by by_name().
std::vector<std::string> names();
/// Throws std::invalid_argument for unknown names.
ToricFixture by_name(std::string_view name);

/// Divisor from ray-id multiplicities; missing rays get 0.
DivisorView divisor(const ComplexPtr& cx, const std::map<std::string, Rat>& mult);

}  // namespace tropdeg::fixtures
