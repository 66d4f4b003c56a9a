#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orchard/field.hpp"
#include "orchard/incidence.hpp"
#include "orchard/projective.hpp"
#include "orchard/realize.hpp"

namespace orchard {

// Counts for the iterated-projection family built from PG(k, q): dualizing
// its point set yields N lines whose intersection points all have
// multiplicity q + 1, one point per line of PG(k, q).
struct TheoremCounts {
  std::uint64_t lines = 0;         // (q^{k+1} - 1) / (q - 1)
  std::uint64_t points = 0;        // (q^{k+1} - 1)(q^k - 1) / ((q^2 - 1)(q - 1))
  std::uint32_t multiplicity = 0;  // q + 1
};

TheoremCounts theorem_a_counts(std::uint32_t k, std::uint64_t q);

struct ConstructionReport {
  std::uint32_t k = 0;
  std::uint64_t q = 0;
  std::uint32_t m_used = 0;
  std::uint32_t m_auto = 0;        // degree the default rule prescribes
  std::vector<FVec<GF>> centers;   // one per projection step, over arrangement.f
  Arrangement arrangement;         // dual of the final plane point set
  IncidenceStructure incidence;
  TVector t;
  TheoremCounts counts;            // verified against the built object
  std::string deviation;           // nonempty when retries moved past m_auto
};

inline constexpr std::uint32_t kAutoDegree = 0;

// Embeds the point set of PG(k, q) into PG(k, q^m), projects from
// collinearity-safe centers down to the plane, and dualizes the image into a
// line arrangement whose incidence structure is verified to match the counts
// above. m = kAutoDegree picks the default degree (1 for k = 2, 4 for
// (3, 2), 3k - 4 for q = 2, otherwise 3k - 5) and retries upward a few steps
// when no center exists, recording the deviation; an explicit m is attempted
// exactly once.
ConstructionReport build_arrangement(std::uint32_t k, std::uint64_t q,
                                     std::uint32_t m = kAutoDegree);

enum class ExtensionStatus { Constructible, CenterFailed, RealizationAbsent };

const char* to_string(ExtensionStatus s);

// For each m in the range: attempt the projection construction over F_{q^m};
// when no center exists and the field is small, decide realizability of the
// PG(k, q) truncation by exhaustive search instead, separating "our center
// method failed" from "no realization exists at all". Construction success is
// cross-checked against the search on small fields; a contradiction is a bug.
std::map<std::uint32_t, ExtensionStatus> minimal_extension_search(
    std::uint32_t k, std::uint64_t q, const std::vector<std::uint32_t>& m_range);

}  // namespace orchard
