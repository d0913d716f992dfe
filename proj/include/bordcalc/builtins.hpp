#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bordcalc/group.hpp"

namespace bordcalc {

inline constexpr std::string_view kG243Presentation =
    "<a,b,c | a^3=c^3, a^9, b^9, [a,b]=c^8*b^6, [b,c]=a^3, [a,c]=b^3*c^6>";

/// Named groups: Cn, Dn (order n), Q8, Sn, An (n <= 6), G64 (alias C8:Q8), G243,
/// and direct products written with 'x', e.g. C2xC4.
FiniteGroup builtin(std::string_view name);

/// Every name of the fixed test catalog, in a stable order.
std::vector<std::string> builtin_catalog();

/// C8 x| Q8 with a.c = c^3, b.c = c^5; generators labelled c, a, b.
FiniteGroup g64();
FiniteGroup g243();
FiniteGroup quaternion8();
FiniteGroup dihedral(std::uint32_t order);
FiniteGroup symmetric(std::uint32_t n);
FiniteGroup alternating(std::uint32_t n);

}  // namespace bordcalc
