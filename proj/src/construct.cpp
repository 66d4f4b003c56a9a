#include "orchard/construct.hpp"

#include <stdexcept>
#include <utility>

namespace orchard {

namespace {

std::pair<std::uint32_t, std::uint32_t> base_field_of(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp) fail(Err::NonPrime, "q = " + std::to_string(q) + " is not a prime power");
  return {std::uint32_t(pp->first), pp->second};
}

std::uint64_t ipow_checked(std::uint64_t b, std::uint32_t e) {
  unsigned __int128 r = 1;
  while (e--) {
    r *= b;
    if (r > (unsigned __int128)~std::uint64_t(0))
      fail(Err::CapExceeded, "power overflows 64 bits");
  }
  return std::uint64_t(r);
}

std::uint32_t auto_degree(std::uint32_t k, std::uint64_t q) {
  if (k == 2) return 1;
  if (q == 2) return k == 3 ? 4 : 3 * k - 4;
  return 3 * k - 5;
}

// How far past the default degree the automatic ladder may climb.
constexpr std::uint32_t kRetrySlack = 3;

// For q = 2 and k >= 4 the degree 3k - 4 provably admits a center, so a
// failure there is an implementation bug, not a data point.
bool center_guaranteed(std::uint32_t k, std::uint64_t q, std::uint32_t m) {
  return q == 2 && k >= 4 && m >= 3 * k - 4;
}

// One construction attempt at a fixed extension degree. Throws NoCenterFound
// when some projection step has no admissible center, CapExceeded when the
// extension field is too large.
ConstructionReport build_at(std::uint32_t k, std::uint32_t p, std::uint32_t a, std::uint64_t q,
                            std::uint32_t m) {
  ConstructionReport rep;
  rep.k = k;
  rep.q = q;
  rep.m_used = m;
  rep.counts = theorem_a_counts(k, q);

  FieldPtr f = make_field(FieldSpec::finite(p, a * m));
  const GF& big = *f->gf;

  auto base = make_gf(p, a);
  std::vector<FVec<GF>> pts = enumerate_points(*base, k);
  if (m > 1) {
    GF::Embedding phi(*base, big);
    for (auto& v : pts)
      for (auto& x : v) x = phi(x);
  }

  PointSet<GF> ps = make_point_set(big, k, std::move(pts));
  while (ps.dim > 2) {
    FVec<GF> c = find_projection_center(big, ps);
    ps = project_from(big, ps, c);
    rep.centers.push_back(std::move(c));
  }

  rep.arrangement = make_arrangement(f, ps.pts);
  auto io = incidence_of(rep.arrangement);
  rep.incidence = std::move(io.inc);
  rep.t = std::move(io.t);

  bool ok = rep.arrangement.n() == rep.counts.lines &&
            rep.incidence.blocks.size() == rep.counts.points;
  for (const auto& b : rep.incidence.blocks)
    if (b.size() != rep.counts.multiplicity) ok = false;
  for (const auto& [mult, cnt] : rep.t.t)
    if (cnt != 0 && mult != rep.counts.multiplicity) ok = false;
  if (!ok)
    throw std::logic_error(
        "projection pipeline produced an arrangement whose intersection "
        "pattern disagrees with the predicted counts");
  return rep;
}

}  // namespace

TheoremCounts theorem_a_counts(std::uint32_t k, std::uint64_t q) {
  if (k < 2) fail(Err::OutOfRange, "the construction needs k >= 2");
  base_field_of(q);
  if (q >= GF::kSizeCap) fail(Err::CapExceeded, "base field too large");
  unsigned __int128 top = ipow_checked(q, k + 1) - 1;
  unsigned __int128 mid = ipow_checked(q, k) - 1;
  unsigned __int128 num = top * mid;
  unsigned __int128 den = ((unsigned __int128)q * q - 1) * (q - 1);
  if (top % (q - 1) != 0 || num % den != 0)
    throw std::logic_error("projective space counts are not integers");
  if (num / den > (unsigned __int128)~std::uint64_t(0))
    fail(Err::CapExceeded, "point count overflows 64 bits");
  TheoremCounts c;
  c.lines = std::uint64_t(top / (q - 1));
  c.points = std::uint64_t(num / den);
  c.multiplicity = std::uint32_t(q + 1);
  return c;
}

ConstructionReport build_arrangement(std::uint32_t k, std::uint64_t q, std::uint32_t m) {
  if (k < 2) fail(Err::OutOfRange, "the construction needs k >= 2");
  auto [p, a] = base_field_of(q);
  std::uint32_t m_auto = auto_degree(k, q);

  if (m != kAutoDegree) {
    try {
      ConstructionReport rep = build_at(k, p, a, q, m);
      rep.m_auto = m_auto;
      return rep;
    } catch (const Error& e) {
      if (e.kind() == Err::NoCenterFound && center_guaranteed(k, q, m))
        throw std::logic_error(std::string("center search failed although the degree is "
                                           "sufficient; this is a bug: ") +
                               e.what());
      throw;
    }
  }

  std::string failed;
  for (std::uint32_t mm = m_auto; mm <= m_auto + kRetrySlack; ++mm) {
    try {
      ConstructionReport rep = build_at(k, p, a, q, mm);
      rep.m_auto = m_auto;
      if (mm != m_auto)
        rep.deviation = "no projection center at degree " + failed +
                        "; succeeded with m = " + std::to_string(mm);
      return rep;
    } catch (const Error& e) {
      if (e.kind() != Err::NoCenterFound) throw;
      if (center_guaranteed(k, q, mm))
        throw std::logic_error(std::string("center search failed although the degree is "
                                           "sufficient; this is a bug: ") +
                               e.what());
      if (!failed.empty()) failed += ", ";
      failed += std::to_string(mm);
    }
  }
  fail(Err::NoCenterFound,
       "no projection center at degree " + failed + " (gave up " +
           std::to_string(kRetrySlack) + " steps past the default)");
}

const char* to_string(ExtensionStatus s) {
  switch (s) {
    case ExtensionStatus::Constructible: return "constructible";
    case ExtensionStatus::CenterFailed: return "center_failed";
    case ExtensionStatus::RealizationAbsent: return "realization_absent";
  }
  return "?";
}

std::map<std::uint32_t, ExtensionStatus> minimal_extension_search(
    std::uint32_t k, std::uint64_t q, const std::vector<std::uint32_t>& m_range) {
  if (k < 2) fail(Err::OutOfRange, "the construction needs k >= 2");
  auto [p, a] = base_field_of(q);

  // Fields up to this size get an independent exhaustive realizability
  // search of the PG(k, q) truncation as a cross-check or fallback.
  constexpr std::uint64_t kSearchableField = 16;

  std::map<std::uint32_t, ExtensionStatus> out;
  for (std::uint32_t m : m_range) {
    if (m == 0) fail(Err::OutOfRange, "extension degrees start at 1");
    std::uint64_t qm = ipow_checked(q, m);
    try {
      build_at(k, p, a, q, m);
      if (qm <= kSearchableField) {
        auto sr = search_realization(generate_pg_truncation(k, q), FieldSpec::finite(p, a * m));
        if (sr.status != SearchStatus::Found)
          throw std::logic_error("construction succeeded but the exhaustive search found no "
                                 "realization; this is a bug");
      }
      out[m] = ExtensionStatus::Constructible;
    } catch (const Error& e) {
      if (e.kind() != Err::NoCenterFound) throw;
      if (center_guaranteed(k, q, m))
        throw std::logic_error(std::string("center search failed although the degree is "
                                           "sufficient; this is a bug: ") +
                               e.what());
      if (qm <= kSearchableField) {
        auto sr = search_realization(generate_pg_truncation(k, q), FieldSpec::finite(p, a * m));
        out[m] = sr.status == SearchStatus::Found ? ExtensionStatus::CenterFailed
                                                  : ExtensionStatus::RealizationAbsent;
      } else {
        out[m] = ExtensionStatus::CenterFailed;
      }
    }
  }
  return out;
}

}  // namespace orchard
