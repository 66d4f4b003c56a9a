#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "orchard/errors.hpp"

namespace orchard {

// Rank-3 simple matroid given by its rank-2 flats of size >= 3.
// Elements are 0-based internally; every public boundary that speaks to files
// or people uses 1-based labels. Blocks are sorted, and the block list is
// sorted, so equal structures compare equal.
struct IncidenceStructure {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> blocks;

  bool operator==(const IncidenceStructure& o) const = default;
};

inline constexpr std::uint32_t kIncidenceCap = 2048;

// blocks given with 1-based labels, any order; canonicalizes.
IncidenceStructure make_incidence(std::uint32_t n,
                                  const std::vector<std::vector<std::uint32_t>>& blocks1);
// blocks given with 0-based labels (e.g. straight from lines_of_pg).
IncidenceStructure make_incidence0(std::uint32_t n,
                                   std::vector<std::vector<std::uint32_t>> blocks0);

struct ValidationReport {
  bool ok = true;
  std::string detail;  // names the first violating pair or block pair
};

ValidationReport validate(const IncidenceStructure& inc);

// Flat n*n lookup pair -> covering block index, kNoBlock when uncovered.
// Meaningful on validated structures (every pair in at most one block).
inline constexpr std::uint32_t kNoBlock = 0xffffffffu;
std::vector<std::uint32_t> pair_block_map(const IncidenceStructure& inc);

bool is_sts(const IncidenceStructure& inc);

// U_3(s) = floor(floor((s-1)/2) * s / 3) minus 1 when s = 5 (mod 6)
std::uint64_t schonheim_bound(std::uint64_t s);

struct TVector {
  std::map<std::uint32_t, std::uint64_t> t;  // multiplicity k >= 2 -> count

  std::uint64_t at(std::uint32_t k) const {
    auto it = t.find(k);
    return it == t.end() ? 0 : it->second;
  }
};

TVector t_vector(const IncidenceStructure& inc);

// e is a 1-based element label; survivors are relabeled to close the gap.
IncidenceStructure delete_element(const IncidenceStructure& inc, std::uint32_t e);

struct AutGroupReport {
  mpz_class order = 1;
  std::vector<std::vector<std::uint32_t>> generators;    // images, 0-based
  std::vector<std::vector<std::uint32_t>> block_orbits;  // partition of block indices
  bool block_transitive = false;
  std::uint64_t leaves = 0;  // accepted backtrack leaves; always equals order
};

AutGroupReport automorphisms(const IncidenceStructure& inc);

// Injection of needle's ground set into haystack's preserving the triple
// collinearity relation exactly (induced restriction). Returns the image of
// each needle element (0-based) or nothing.
std::optional<std::vector<std::uint32_t>> contains_restriction(
    const IncidenceStructure& haystack, const IncidenceStructure& needle);

// Points and lines of PG(k, q) as an incidence structure.
IncidenceStructure generate_pg_truncation(std::uint32_t k, std::uint64_t q);

// Deterministic permutation group machinery (used for automorphism reports).
class PermGroup {
 public:
  explicit PermGroup(std::uint32_t n);
  // true if the permutation enlarged the group
  bool add(const std::vector<std::uint32_t>& g);
  bool contains(const std::vector<std::uint32_t>& g) const;
  mpz_class order() const;

 private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<std::vector<std::uint32_t>> gens;
    // orbit of base: point -> index+1 into transversal, 0 = not in orbit
    std::vector<std::uint32_t> orbit_pos;
    std::vector<std::vector<std::uint32_t>> transversal;  // maps base -> point
  };
  std::uint32_t n_;
  std::vector<Level> levels_;

  void extend_orbit(std::size_t li);
  void insert_residue(std::vector<std::uint32_t> r, std::size_t lo, std::size_t stop);
  void close_level(std::size_t li);
  std::pair<std::size_t, std::vector<std::uint32_t>> sift_from(std::vector<std::uint32_t> g,
                                                               std::size_t from) const;
};

}  // namespace orchard
