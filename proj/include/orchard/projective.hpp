#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "orchard/errors.hpp"
#include "orchard/field.hpp"

namespace orchard {

template <class F>
using FVec = std::vector<typename F::Elem>;

inline int elem_cmp(const GF&, GF::Elem a, GF::Elem b) {
  return a < b ? -1 : (a > b ? 1 : 0);
}
inline int elem_cmp(const QField&, const QField::Elem& a, const QField::Elem& b) {
  return QField::cmp(a, b);
}

template <class F>
int vec_cmp(const F& f, const FVec<F>& a, const FVec<F>& b) {
  if (a.size() != b.size()) fail(Err::DimensionMismatch, "comparing vectors of unequal length");
  for (size_t i = 0; i < a.size(); ++i)
    if (int c = elem_cmp(f, a[i], b[i])) return c;
  return 0;
}

// Scale a homogeneous vector so its first nonzero coordinate is 1.
template <class F>
FVec<F> normalize_vec(const F& f, FVec<F> v) {
  size_t lead = v.size();
  for (size_t i = 0; i < v.size(); ++i)
    if (!f.is_zero(v[i])) {
      lead = i;
      break;
    }
  if (lead == v.size()) fail(Err::OutOfRange, "zero vector has no projective class");
  auto s = f.inv(v[lead]);
  for (auto& x : v) x = f.mul(x, s);
  return v;
}

template <class F>
size_t lead_index(const F& f, const FVec<F>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!f.is_zero(v[i])) return i;
  fail(Err::OutOfRange, "zero vector has no leading coordinate");
}

// In-place reduced row echelon form; returns the rank. Rows end up ordered by
// pivot column, pivots are 1 and cleared above and below, zero rows dropped.
// The result is the canonical representative of the row space.
template <class F>
size_t rref(const F& f, std::vector<FVec<F>>& rows) {
  if (rows.empty()) return 0;
  size_t cols = rows[0].size(), r = 0;
  for (auto& row : rows)
    if (row.size() != cols) fail(Err::DimensionMismatch, "ragged matrix");
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t piv = rows.size();
    for (size_t i = r; i < rows.size(); ++i)
      if (!f.is_zero(rows[i][c])) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    auto s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, s);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || f.is_zero(rows[i][c])) continue;
      auto t = rows[i][c];
      for (size_t j = 0; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(t, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return r;
}

template <class F>
size_t rank_of(const F& f, std::vector<FVec<F>> rows) {
  return rref(f, rows);
}

// Membership of v in the row space of an RREF matrix.
template <class F>
bool in_span(const F& f, const std::vector<FVec<F>>& rr, FVec<F> v) {
  for (const auto& row : rr) {
    size_t c = 0;
    while (c < row.size() && f.is_zero(row[c])) ++c;
    if (c == row.size() || f.is_zero(v[c])) continue;
    auto t = v[c];
    for (size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(t, row[j]));
  }
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
bool collinear(const F& f, const FVec<F>& a, const FVec<F>& b, const FVec<F>& c) {
  if (a.size() != b.size() || a.size() != c.size())
    fail(Err::DimensionMismatch, "collinearity needs equal ambient dimensions");
  if (a.size() < 3) fail(Err::DimensionMismatch, "ambient dimension must be at least 2");
  return rank_of(f, std::vector<FVec<F>>{a, b, c}) <= 2;
}

template <class F>
typename F::Elem det3(const F& f, const FVec<F>& a, const FVec<F>& b, const FVec<F>& c) {
  if (a.size() != 3 || b.size() != 3 || c.size() != 3)
    fail(Err::DimensionMismatch, "det3 needs length-3 vectors");
  auto m = [&](const typename F::Elem& x, const typename F::Elem& y) { return f.mul(x, y); };
  auto minor = [&](size_t i, size_t j, size_t k, size_t l) {
    return f.sub(m(b[i], c[j]), m(b[k], c[l]));
  };
  auto t0 = m(a[0], minor(1, 2, 2, 1));
  auto t1 = m(a[1], minor(2, 0, 0, 2));
  auto t2 = m(a[2], minor(0, 1, 1, 0));
  return f.add(f.add(t0, t1), t2);
}

template <class F>
FVec<F> cross3(const F& f, const FVec<F>& a, const FVec<F>& b) {
  if (a.size() != 3 || b.size() != 3) fail(Err::DimensionMismatch, "cross3 needs length-3 vectors");
  return FVec<F>{f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
                 f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
                 f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

template <class F>
struct PointSet {
  size_t dim = 0;               // ambient projective dimension
  std::vector<FVec<F>> pts;     // normalized, pairwise distinct, order significant
};

template <class F>
PointSet<F> make_point_set(const F& f, size_t dim, std::vector<FVec<F>> raw) {
  PointSet<F> ps;
  ps.dim = dim;
  for (auto& v : raw) {
    if (v.size() != dim + 1) fail(Err::DimensionMismatch, "coordinate vector has wrong length");
    auto n = normalize_vec(f, std::move(v));
    for (const auto& prev : ps.pts)
      if (prev == n) fail(Err::OutOfRange, "duplicate projective point in point set");
    ps.pts.push_back(std::move(n));
  }
  return ps;
}

// All triples (i<j<k) of the set that are collinear.
template <class F>
std::vector<std::array<std::uint32_t, 3>> collinear_triples(const F& f, const PointSet<F>& ps) {
  std::vector<std::array<std::uint32_t, 3>> out;
  size_t n = ps.pts.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k)
        if (collinear(f, ps.pts[i], ps.pts[j], ps.pts[k]))
          out.push_back({std::uint32_t(i), std::uint32_t(j), std::uint32_t(k)});
  return out;
}

inline constexpr std::uint64_t kPointEnumCap = std::uint64_t(1) << 20;

std::uint64_t point_count(std::uint64_t q, size_t dim);

// Lazy enumeration of PG(dim, F) in canonical order: lexicographically
// ascending normalized coordinate tuples, i.e. (0,...,0,1) first and the
// affine chart (1:*:...:*) last.
class PointIter {
 public:
  PointIter(const GF& f, size_t dim);
  // Writes the next point into out; false once exhausted.
  bool next(FVec<GF>& out);

 private:
  const GF& f_;
  size_t dim_, lead_;
  std::vector<GF::Elem> tail_;
  bool fresh_;
};

std::vector<FVec<GF>> enumerate_points(const GF& f, size_t dim);

// Index of a normalized point in the canonical enumeration (binary search on
// the lex order); returns npos when absent.
std::uint32_t point_index(const GF& f, const std::vector<FVec<GF>>& sorted_pts,
                          const FVec<GF>& v);
inline constexpr std::uint32_t kNoPoint = 0xffffffffu;

// All lines of PG(dim, q) as sorted index tuples over enumerate_points order;
// the list itself is sorted lexicographically.
std::vector<std::vector<std::uint32_t>> lines_of_pg(const GF& f, size_t dim);

// First point in canonical order lying on no secant of ps and on no plane
// spanned by a non-collinear triple of ps.
FVec<GF> find_projection_center(const GF& f, const PointSet<GF>& ps);

template <class F>
PointSet<F> project_from(const F& f, const PointSet<F>& ps, const FVec<F>& center_raw) {
  if (ps.dim < 1) fail(Err::DimensionMismatch, "cannot project below dimension 0");
  auto center = normalize_vec(f, center_raw);
  if (center.size() != ps.dim + 1)
    fail(Err::DimensionMismatch, "center has wrong ambient dimension");
  size_t l = lead_index(f, center);
  PointSet<F> out;
  out.dim = ps.dim - 1;
  for (const auto& p : ps.pts) {
    if (p == center) fail(Err::InvalidCenter, "center lies in the point set");
    FVec<F> v(ps.dim);
    size_t w = 0;
    for (size_t j = 0; j < p.size(); ++j) {
      if (j == l) continue;
      v[w++] = f.sub(p[j], f.mul(p[l], center[j]));
    }
    bool zero = true;
    for (const auto& x : v)
      if (!f.is_zero(x)) {
        zero = false;
        break;
      }
    if (zero) fail(Err::InvalidCenter, "point projects to nothing (equals the center)");
    auto img = normalize_vec(f, std::move(v));
    for (const auto& prev : out.pts)
      if (prev == img) fail(Err::InvalidCenter, "projection is not injective on the point set");
    out.pts.push_back(std::move(img));
  }
  // Collinearity must be preserved triple for triple.
  size_t n = ps.pts.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        bool before = collinear(f, ps.pts[i], ps.pts[j], ps.pts[k]);
        // on a projective line every triple is collinear
        bool after = out.dim >= 2 ? collinear(f, out.pts[i], out.pts[j], out.pts[k]) : true;
        if (before != after)
          fail(Err::InvalidCenter, "projection alters a collinearity");
      }
  return out;
}

}  // namespace orchard
