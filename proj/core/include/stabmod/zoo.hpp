#pragma once
// Built-in fixture codes: trivial product state, toric codes over Z_2/3/4/6,
// Wen plaquette, the rank-1 hyperbolic example, and the X-cube model. Every
// fixture is isotropy-checked on construction.
#include <string>
#include <vector>

#include "stabmod/symplectic.hpp"

namespace stabmod {

std::vector<std::string> zoo_names();
StabilizerCode zoo_code(const std::string& name);

}  // namespace stabmod
