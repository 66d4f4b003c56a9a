#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orchard/field.hpp"
#include "orchard/incidence.hpp"
#include "orchard/projective.hpp"

namespace orchard {

// A simple line arrangement in the projective plane: column j of the 3xn
// matrix holds the coefficients of line j (the dual point). Exactly one of
// the two column stores is used, depending on the field kind. Columns are
// kept as given (not projectively rescaled); all comparisons normalize.
struct Arrangement {
  FieldPtr f;
  std::vector<FVec<GF>> gcols;
  std::vector<FVec<QField>> qcols;

  std::size_t n() const { return f->finite() ? gcols.size() : qcols.size(); }
};

// Both constructors enforce the arrangement invariants: columns of length 3,
// no zero column, no two columns projectively equal.
Arrangement make_arrangement(FieldPtr f, std::vector<FVec<GF>> cols);
Arrangement make_arrangement(FieldPtr f, std::vector<FVec<QField>> cols);

struct IncidenceOfResult {
  IncidenceStructure inc;
  TVector t;
};

// Intersection structure of the dual points: lines i and j meet in the point
// cross(col_i, col_j); coincident intersection points of >= 3 lines form the
// blocks.
IncidenceOfResult incidence_of(const Arrangement& arr);

struct VerifyResult {
  bool ok = true;
  std::string discrepancy;  // first failing triple, when !ok
};

// Checks det(P_X) = 0 <=> X is contained in a block, over all triples X.
VerifyResult verify_realization(const Arrangement& arr, const IncidenceStructure& inc);

struct SearchOptions {
  unsigned workers = 1;        // accepted for CLI stability; traversal is sequential
  bool fast = false;           // reserved; the sequential order already yields the least witness
  bool allow_big_blocks = false;
};

enum class SearchStatus { Found, Exhausted };

struct SearchOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Arrangement> witness;  // canonical least in the search order
  std::uint64_t nodes = 0;             // accepted column placements
  double elapsed_seconds = 0.0;
};

// Exhaustive normalized backtracking: the lexicographically first frame of
// four elements (no three co-blocked) is pinned to the standard projective
// frame, remaining columns are placed most-constrained-first with forced
// line-line intersections where two anchored blocks meet.
SearchOutcome search_realization(const IncidenceStructure& inc, const FieldSpec& field,
                                 const SearchOptions& opts = {});

struct IdealExport {
  std::vector<std::string> variables;  // p_1_1 .. p_3_n, d
  bool factored_saturation = true;
  std::vector<std::string> generators;
};

// Determinant generators for the triples inside blocks (lexicographic triple
// order) plus the saturation generator 1 - d * prod det(basis triples), the
// product kept factored.
IdealExport build_ideal(const IncidenceStructure& inc);

}  // namespace orchard
