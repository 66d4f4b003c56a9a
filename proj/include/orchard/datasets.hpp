#pragma once

#include <string>
#include <vector>

#include "orchard/incidence.hpp"
#include "orchard/realize.hpp"

namespace orchard {

// Bundled reference instances, addressable by name (the CLI accepts "@name").
// Unknown names raise Err::UnknownName.
IncidenceStructure builtin_incidence(const std::string& name);
Arrangement builtin_arrangement(const std::string& name);

std::vector<std::string> builtin_incidence_names();
std::vector<std::string> builtin_arrangement_names();

}  // namespace orchard
