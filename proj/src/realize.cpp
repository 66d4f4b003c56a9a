#include "orchard/realize.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <sstream>

namespace orchard {

namespace {

template <class F>
void check_columns(const F& f, const std::vector<FVec<F>>& cols) {
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != 3)
      fail(Err::DimensionMismatch, "arrangement columns must have length 3");
    bool all_zero = true;
    for (const auto& e : cols[j])
      if (!f.is_zero(e)) all_zero = false;
    if (all_zero)
      fail(Err::DegenerateColumn, "column " + std::to_string(j + 1) + " is zero");
  }
  std::vector<FVec<F>> norm(cols.size());
  for (size_t j = 0; j < cols.size(); ++j) norm[j] = normalize_vec(f, cols[j]);
  for (size_t i = 0; i < cols.size(); ++i)
    for (size_t j = i + 1; j < cols.size(); ++j)
      if (vec_cmp(f, norm[i], norm[j]) == 0)
        fail(Err::DuplicateLine, "columns " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " are projectively equal");
}

template <class F>
struct VecLess {
  const F* f;
  bool operator()(const FVec<F>& a, const FVec<F>& b) const { return vec_cmp(*f, a, b) < 0; }
};

template <class F>
IncidenceOfResult incidence_core(const F& f, const std::vector<FVec<F>>& cols) {
  const std::uint32_t n = std::uint32_t(cols.size());
  std::map<FVec<F>, std::vector<std::uint32_t>, VecLess<F>> groups(VecLess<F>{&f});
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      FVec<F> pt = cross3(f, cols[i], cols[j]);
      bool zero = true;
      for (const auto& e : pt)
        if (!f.is_zero(e)) zero = false;
      if (zero)
        fail(Err::DuplicateLine, "columns " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " are projectively equal");
      auto& g = groups[normalize_vec(f, std::move(pt))];
      g.push_back(i);
      g.push_back(j);
    }
  std::vector<std::vector<std::uint32_t>> blocks;
  for (auto& [pt, members] : groups) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() >= 3) blocks.push_back(members);
  }
  IncidenceOfResult out;
  out.inc = make_incidence0(n, std::move(blocks));
  out.t = t_vector(out.inc);
  return out;
}

bool coblocked(const std::vector<std::uint32_t>& pb, std::uint32_t n, std::uint32_t a,
               std::uint32_t b, std::uint32_t c) {
  const std::uint32_t t = pb[std::size_t(a) * n + b];
  return t != kNoBlock && t == pb[std::size_t(a) * n + c];
}

template <class F>
VerifyResult verify_core(const F& f, const std::vector<FVec<F>>& cols,
                         const IncidenceStructure& inc) {
  const std::uint32_t n = inc.n;
  const auto pb = pair_block_map(inc);
  VerifyResult res;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      for (std::uint32_t k = j + 1; k < n; ++k) {
        const bool zero = f.is_zero(det3(f, cols[i], cols[j], cols[k]));
        const bool cob = coblocked(pb, n, i, j, k);
        if (zero != cob) {
          std::ostringstream os;
          os << "triple {" << i + 1 << "," << j + 1 << "," << k + 1 << "}: determinant is "
             << (zero ? "zero" : "nonzero") << " but the triple is "
             << (cob ? "" : "not ") << "contained in a block";
          res.ok = false;
          res.discrepancy = os.str();
          return res;
        }
      }
  return res;
}

GF::Elem dot3(const GF& f, const FVec<GF>& a, const FVec<GF>& b) {
  return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

// Exhaustive backtracking over normalized columns with the first frame pinned.
class Searcher {
 public:
  Searcher(const IncidenceStructure& inc, FieldPtr fp)
      : inc_(inc),
        fp_(std::move(fp)),
        f_(*fp_->gf),
        n_(inc.n),
        pb_(pair_block_map(inc)),
        elem_blocks_(inc.n),
        placed_(inc.n, false),
        col_(inc.n),
        blk_placed_(inc.blocks.size(), 0),
        kappa_(std::size_t(inc.n) * inc.n) {
    for (std::uint32_t bi = 0; bi < inc_.blocks.size(); ++bi)
      for (auto e : inc_.blocks[bi]) elem_blocks_[e].push_back(bi);
    plane_pts_ = enumerate_points(f_, 2);
  }

  SearchOutcome run() {
    const auto t0 = std::chrono::steady_clock::now();
    SearchOutcome out;
    const auto frame = find_frame();
    if (!frame)
      fail(Err::NoFrame, "no four elements avoid a common block triple; "
                         "the structure has no projective frame to pin");
    const GF::Elem o = f_.one(), z = f_.zero();
    place((*frame)[0], {o, z, z});
    place((*frame)[1], {z, o, z});
    place((*frame)[2], {z, z, o});
    place((*frame)[3], {o, o, o});
    if (dfs()) {
      out.status = SearchStatus::Found;
      out.witness = make_witness();
    }
    out.nodes = nodes_;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

 private:
  bool cob(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return coblocked(pb_, n_, a, b, c);
  }

  std::optional<std::array<std::uint32_t, 4>> find_frame() const {
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = a + 1; b < n_; ++b)
        for (std::uint32_t c = b + 1; c < n_; ++c) {
          if (cob(a, b, c)) continue;
          for (std::uint32_t d = c + 1; d < n_; ++d)
            if (!cob(a, b, d) && !cob(a, c, d) && !cob(b, c, d))
              return std::array<std::uint32_t, 4>{a, b, c, d};
        }
    return std::nullopt;
  }

  FVec<GF>& kappa_at(std::uint32_t u, std::uint32_t w) {
    const auto [lo, hi] = std::minmax(u, w);
    return kappa_[std::size_t(lo) * n_ + hi];
  }
  const FVec<GF>& kappa_of(std::uint32_t u, std::uint32_t w) const {
    const auto [lo, hi] = std::minmax(u, w);
    return kappa_[std::size_t(lo) * n_ + hi];
  }

  void place(std::uint32_t e, FVec<GF> x) {
    for (std::uint32_t u : order_) kappa_at(u, e) = cross3(f_, col_[u], x);
    col_[e] = std::move(x);
    placed_[e] = true;
    order_.push_back(e);
    for (auto bi : elem_blocks_[e]) ++blk_placed_[bi];
    ++nodes_;
  }

  void unplace() {
    const std::uint32_t e = order_.back();
    order_.pop_back();
    placed_[e] = false;
    for (auto bi : elem_blocks_[e]) --blk_placed_[bi];
  }

  bool feasible(std::uint32_t e, const FVec<GF>& x) const {
    for (std::uint32_t u : order_)
      if (col_[u] == x) return false;
    for (size_t i = 0; i < order_.size(); ++i)
      for (size_t j = i + 1; j < order_.size(); ++j) {
        const std::uint32_t u = order_[i], w = order_[j];
        const bool on_point = f_.is_zero(dot3(f_, kappa_of(u, w), x));
        if (on_point != cob(e, u, w)) return false;
      }
    return true;
  }

  std::uint32_t pick_element() const {
    std::uint32_t best = kNoBlock, best_anch = 0;
    for (std::uint32_t e = 0; e < n_; ++e) {
      if (placed_[e]) continue;
      std::uint32_t anch = 0;
      for (auto bi : elem_blocks_[e])
        if (blk_placed_[bi] >= 2) ++anch;
      if (best == kNoBlock || anch > best_anch) {
        best = e;
        best_anch = anch;
      }
    }
    return best;
  }

  // The q+1 normalized points on the line with coefficient vector k.
  std::vector<FVec<GF>> pencil(const FVec<GF>& k) const {
    FVec<GF> v1, v2;
    const GF::Elem a = k[0], b = k[1], c = k[2];
    if (!f_.is_zero(a)) {
      v1 = {b, f_.neg(a), f_.zero()};
      v2 = {c, f_.zero(), f_.neg(a)};
    } else {
      v1 = {f_.one(), f_.zero(), f_.zero()};
      v2 = {f_.zero(), c, f_.neg(b)};
    }
    std::vector<FVec<GF>> out;
    out.reserve(std::size_t(f_.q()) + 1);
    out.push_back(normalize_vec(f_, v2));
    for (std::uint64_t t = 0; t < f_.q(); ++t) {
      const GF::Elem te = GF::Elem(t);
      FVec<GF> v(3);
      for (int i = 0; i < 3; ++i) v[i] = f_.add(v1[i], f_.mul(te, v2[i]));
      out.push_back(normalize_vec(f_, std::move(v)));
    }
    std::sort(out.begin(), out.end(),
              [this](const FVec<GF>& x, const FVec<GF>& y) { return vec_cmp(f_, x, y) < 0; });
    return out;
  }

  // Candidate columns for e in canonical order: the forced meet of two
  // anchored block points, the pencil through one anchored point, or the
  // whole plane.
  std::vector<FVec<GF>> candidates(std::uint32_t e) const {
    std::vector<FVec<GF>> anchor;
    for (auto bi : elem_blocks_[e]) {
      if (blk_placed_[bi] < 2) continue;
      std::uint32_t u = kNoBlock, w = kNoBlock;
      for (auto m : inc_.blocks[bi]) {
        if (!placed_[m]) continue;
        if (u == kNoBlock) {
          u = m;
        } else {
          w = m;
          break;
        }
      }
      anchor.push_back(kappa_of(u, w));
      if (anchor.size() == 2) break;
    }
    if (anchor.size() >= 2) {
      FVec<GF> x = cross3(f_, anchor[0], anchor[1]);
      if (f_.is_zero(x[0]) && f_.is_zero(x[1]) && f_.is_zero(x[2])) return {};
      return {normalize_vec(f_, std::move(x))};
    }
    if (anchor.size() == 1) return pencil(anchor[0]);
    return plane_pts_;
  }

  bool dfs() {
    if (order_.size() == n_) return true;
    const std::uint32_t e = pick_element();
    for (auto& x : candidates(e)) {
      if (!feasible(e, x)) continue;
      place(e, std::move(x));
      if (dfs()) return true;
      unplace();
    }
    return false;
  }

  Arrangement make_witness() const { return make_arrangement(fp_, col_); }

  const IncidenceStructure& inc_;
  const FieldPtr fp_;
  const GF& f_;
  const std::uint32_t n_;
  const std::vector<std::uint32_t> pb_;
  std::vector<std::vector<std::uint32_t>> elem_blocks_;
  std::vector<bool> placed_;
  std::vector<FVec<GF>> col_;
  std::vector<std::uint32_t> blk_placed_;
  std::vector<FVec<GF>> kappa_;
  std::vector<FVec<GF>> plane_pts_;
  std::vector<std::uint32_t> order_;
  std::uint64_t nodes_ = 0;
};

std::string det_string(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  const std::string si = std::to_string(i), sj = std::to_string(j), sk = std::to_string(k);
  std::string s;
  s += "p_1_" + si + "*p_2_" + sj + "*p_3_" + sk;
  s += " - p_1_" + si + "*p_3_" + sj + "*p_2_" + sk;
  s += " - p_2_" + si + "*p_1_" + sj + "*p_3_" + sk;
  s += " + p_2_" + si + "*p_3_" + sj + "*p_1_" + sk;
  s += " + p_3_" + si + "*p_1_" + sj + "*p_2_" + sk;
  s += " - p_3_" + si + "*p_2_" + sj + "*p_1_" + sk;
  return s;
}

void require_valid(const IncidenceStructure& inc) {
  const auto rep = validate(inc);
  if (!rep.ok) fail(Err::OutOfRange, "invalid incidence structure: " + rep.detail);
}

}  // namespace

Arrangement make_arrangement(FieldPtr f, std::vector<FVec<GF>> cols) {
  if (!f || !f->finite()) fail(Err::FieldMismatch, "finite columns need a finite field");
  check_columns(*f->gf, cols);
  Arrangement a;
  a.f = std::move(f);
  a.gcols = std::move(cols);
  return a;
}

Arrangement make_arrangement(FieldPtr f, std::vector<FVec<QField>> cols) {
  if (!f || f->finite()) fail(Err::FieldMismatch, "rational columns need a rational field");
  check_columns(*f->qf, cols);
  Arrangement a;
  a.f = std::move(f);
  a.qcols = std::move(cols);
  return a;
}

IncidenceOfResult incidence_of(const Arrangement& arr) {
  return arr.f->finite() ? incidence_core(*arr.f->gf, arr.gcols)
                         : incidence_core(*arr.f->qf, arr.qcols);
}

VerifyResult verify_realization(const Arrangement& arr, const IncidenceStructure& inc) {
  if (arr.n() != inc.n)
    fail(Err::SizeMismatch, "arrangement has " + std::to_string(arr.n()) +
                                " lines but the structure has " + std::to_string(inc.n) +
                                " elements");
  require_valid(inc);
  return arr.f->finite() ? verify_core(*arr.f->gf, arr.gcols, inc)
                         : verify_core(*arr.f->qf, arr.qcols, inc);
}

SearchOutcome search_realization(const IncidenceStructure& inc, const FieldSpec& field,
                                 const SearchOptions& opts) {
  if (field.kind != FieldSpec::Kind::Finite)
    fail(Err::InfiniteField, "realization search enumerates candidates and needs a finite field");
  require_valid(inc);
  if (!opts.allow_big_blocks)
    for (const auto& b : inc.blocks)
      if (b.size() > 3)
        fail(Err::SizeMismatch,
             "blocks of size > 3 are only searched with allow_big_blocks set");
  Searcher s(inc, make_field(field));
  SearchOutcome out = s.run();
  if (out.status == SearchStatus::Found) {
    const auto check = verify_realization(*out.witness, inc);
    if (!check.ok)
      throw std::logic_error("search produced a witness that fails verification: " +
                             check.discrepancy);
  }
  return out;
}

IdealExport build_ideal(const IncidenceStructure& inc) {
  require_valid(inc);
  const std::uint32_t n = inc.n;
  const auto pb = pair_block_map(inc);
  IdealExport out;
  for (std::uint32_t r = 1; r <= 3; ++r)
    for (std::uint32_t c = 1; c <= n; ++c)
      out.variables.push_back("p_" + std::to_string(r) + "_" + std::to_string(c));
  out.variables.push_back("d");
  std::string saturation = "1 - d";
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      for (std::uint32_t k = j + 1; k < n; ++k) {
        if (coblocked(pb, n, i, j, k))
          out.generators.push_back(det_string(i + 1, j + 1, k + 1));
        else
          saturation += "*(" + det_string(i + 1, j + 1, k + 1) + ")";
      }
  out.generators.push_back(std::move(saturation));
  return out;
}

}  // namespace orchard
