#pragma once

// Helpers shared by the realization tests and the acceptance run.

#include <vector>

#include "orchard/incidence.hpp"
#include "orchard/projective.hpp"

namespace orchard::testutil {

// Unnormalized brute-force realizability oracle: tries every nonzero column
// vector (no rescaling, no pinned frame) for each element in label order,
// pruning only on projective duplicates and violated triple relations among
// the placed columns. Deliberately ignorant of the search's frame, pencil and
// forcing machinery so the two can disagree.
inline bool brute_realizable(const IncidenceStructure& inc, const GF& f) {
  const std::uint32_t n = inc.n;
  const auto pb = pair_block_map(inc);
  auto cob = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    const std::uint32_t t = pb[std::size_t(a) * n + b];
    return t != kNoBlock && t == pb[std::size_t(a) * n + c];
  };
  std::vector<FVec<GF>> all;
  for (std::uint64_t a = 0; a < f.q(); ++a)
    for (std::uint64_t b = 0; b < f.q(); ++b)
      for (std::uint64_t c = 0; c < f.q(); ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        all.push_back({GF::Elem(a), GF::Elem(b), GF::Elem(c)});
      }
  std::vector<FVec<GF>> col(n), norm(n);
  auto rec = [&](auto&& self, std::uint32_t e) -> bool {
    if (e == n) return true;
    for (const auto& v : all) {
      FVec<GF> nv = normalize_vec(f, v);
      bool ok = true;
      for (std::uint32_t u = 0; u < e && ok; ++u)
        if (norm[u] == nv) ok = false;
      for (std::uint32_t u = 0; u < e && ok; ++u)
        for (std::uint32_t w = u + 1; w < e && ok; ++w)
          if (f.is_zero(det3(f, col[u], col[w], v)) != cob(u, w, e)) ok = false;
      if (!ok) continue;
      col[e] = v;
      norm[e] = std::move(nv);
      if (self(self, e + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace orchard::testutil
