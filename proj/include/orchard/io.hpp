#pragma once

#include <string>

#include "orchard/incidence.hpp"
#include "orchard/realize.hpp"

namespace orchard {

// Text formats. Parsers skip blank lines and '#' comments; writers emit the
// canonical form, so serializing a freshly parsed canonical file reproduces
// it byte for byte.
//
// Incidence:    "n <N>" then one block per line, 1-based elements.
// Arrangement:  a field header ("field p k m0..mk" | "field Q" |
//               "field Qquad c2 c1 c0"), "n <N>", then N rows of three
//               element literals; row j holds the coefficients of line j.
// Ideal:        variable list and the factored-saturation flag, then one
//               generator per line (write-only; feeds external CAS tools).

std::string serialize_incidence(const IncidenceStructure& inc);
IncidenceStructure parse_incidence(const std::string& text);

std::string serialize_arrangement(const Arrangement& arr);
Arrangement parse_arrangement(const std::string& text);

std::string serialize_ideal(const IdealExport& ide);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace orchard
