#include "orchard/projective.hpp"

#include <algorithm>
#include <set>

namespace orchard {

std::uint64_t point_count(std::uint64_t q, size_t dim) {
  std::uint64_t total = 1, pw = 1;
  for (size_t i = 0; i <= dim; ++i) {
    pw *= q;
    if (pw > (std::uint64_t(1) << 40)) fail(Err::CapExceeded, "projective space too large");
  }
  total = (pw - 1) / (q - 1);
  return total;
}

PointIter::PointIter(const GF& f, size_t dim)
    : f_(f), dim_(dim), lead_(dim), tail_(), fresh_(true) {
  if (dim < 1) fail(Err::DimensionMismatch, "projective dimension must be at least 1");
}

bool PointIter::next(FVec<GF>& out) {
  if (fresh_) {
    fresh_ = false;
  } else {
    // advance the odometer on the free tail, rightmost digit fastest
    bool carry = true;
    for (size_t i = tail_.size(); i-- > 0;) {
      if (++tail_[i] < f_.q()) {
        carry = false;
        break;
      }
      tail_[i] = 0;
    }
    if (carry) {
      if (lead_ == 0) return false;
      --lead_;
      tail_.assign(dim_ - lead_, 0);
    }
  }
  out.assign(dim_ + 1, f_.zero());
  out[lead_] = f_.one();
  for (size_t j = 0; j < tail_.size(); ++j) out[lead_ + 1 + j] = tail_[j];
  return true;
}

std::vector<FVec<GF>> enumerate_points(const GF& f, size_t dim) {
  std::uint64_t n = point_count(f.q(), dim);
  if (n > kPointEnumCap) fail(Err::CapExceeded, "point enumeration exceeds the cap");
  std::vector<FVec<GF>> pts;
  pts.reserve(n);
  PointIter it(f, dim);
  FVec<GF> v;
  while (it.next(v)) pts.push_back(v);
  return pts;
}

std::uint32_t point_index(const GF& f, const std::vector<FVec<GF>>& sorted_pts,
                          const FVec<GF>& v) {
  auto cmp = [&f](const FVec<GF>& a, const FVec<GF>& b) { return vec_cmp(f, a, b) < 0; };
  auto it = std::lower_bound(sorted_pts.begin(), sorted_pts.end(), v, cmp);
  if (it == sorted_pts.end() || *it != v) return kNoPoint;
  return std::uint32_t(it - sorted_pts.begin());
}

std::vector<std::vector<std::uint32_t>> lines_of_pg(const GF& f, size_t dim) {
  auto pts = enumerate_points(f, dim);
  size_t n = pts.size();
  std::vector<bool> covered(n * n, false);
  std::vector<std::vector<std::uint32_t>> lines;
  FVec<GF> w(dim + 1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (covered[i * n + j]) continue;
      // the line through pts[i], pts[j]: pts[j] plus pts[i] + t*pts[j] for all t
      std::vector<std::uint32_t> line;
      line.push_back(std::uint32_t(j));
      for (GF::Elem t = 0; t < f.q(); ++t) {
        for (size_t c = 0; c <= dim; ++c) w[c] = f.add(pts[i][c], f.mul(t, pts[j][c]));
        auto idx = point_index(f, pts, normalize_vec(f, w));
        line.push_back(idx);
      }
      std::sort(line.begin(), line.end());
      for (size_t a = 0; a < line.size(); ++a)
        for (size_t b = a + 1; b < line.size(); ++b)
          covered[line[a] * n + line[b]] = true;
      lines.push_back(std::move(line));
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

namespace {

// Forbidden flats for the center scan, kept as RREF row sets. The list is
// reordered move-to-front as candidates hit, so dense rejection stays cheap;
// the predicate itself is order-independent.
struct FlatList {
  std::vector<std::vector<FVec<GF>>> flats;

  bool hits(const GF& f, const FVec<GF>& v) {
    for (size_t i = 0; i < flats.size(); ++i) {
      if (in_span(f, flats[i], v)) {
        if (i > 0) std::rotate(flats.begin(), flats.begin() + i, flats.begin() + i + 1);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

FVec<GF> find_projection_center(const GF& f, const PointSet<GF>& ps) {
  if (ps.dim < 3) fail(Err::DimensionMismatch, "center search needs ambient dimension >= 3");
  size_t n = ps.pts.size();
  if (n == 0) fail(Err::OutOfRange, "empty point set");

  std::set<std::vector<FVec<GF>>> secant_keys, plane_keys;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      std::vector<FVec<GF>> rows{ps.pts[i], ps.pts[j]};
      rref(f, rows);
      secant_keys.insert(std::move(rows));
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        std::vector<FVec<GF>> rows{ps.pts[i], ps.pts[j], ps.pts[k]};
        if (rref(f, rows) == 3) plane_keys.insert(std::move(rows));
      }

  FlatList secants{{secant_keys.begin(), secant_keys.end()}};
  FlatList planes{{plane_keys.begin(), plane_keys.end()}};

  PointIter it(f, ps.dim);
  FVec<GF> v;
  while (it.next(v)) {
    if (secants.hits(f, v)) continue;  // also excludes the points themselves
    if (planes.hits(f, v)) continue;
    if (n == 1 && v == ps.pts[0]) continue;  // no secants to catch a lone point
    return v;
  }
  fail(Err::NoCenterFound, "every point of the ambient space lies on a spanned flat");
}

}  // namespace orchard
