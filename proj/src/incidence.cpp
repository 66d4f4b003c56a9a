#include "orchard/incidence.hpp"

#include <algorithm>
#include <numeric>

#include "orchard/projective.hpp"

namespace orchard {

// pair -> covering block index (first one found; callers require validated input)
std::vector<std::uint32_t> pair_block_map(const IncidenceStructure& inc) {
  std::vector<std::uint32_t> pb(std::size_t(inc.n) * inc.n, kNoBlock);
  for (std::uint32_t bi = 0; bi < inc.blocks.size(); ++bi) {
    const auto& b = inc.blocks[bi];
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j) {
        auto& slot = pb[std::size_t(b[i]) * inc.n + b[j]];
        if (slot == kNoBlock) slot = bi;
        pb[std::size_t(b[j]) * inc.n + b[i]] = pb[std::size_t(b[i]) * inc.n + b[j]];
      }
  }
  return pb;
}

namespace {

constexpr std::uint32_t kNone = kNoBlock;

std::uint32_t block_index_of(const IncidenceStructure& inc,
                             const std::vector<std::uint32_t>& sorted_block) {
  auto it = std::lower_bound(inc.blocks.begin(), inc.blocks.end(), sorted_block);
  if (it == inc.blocks.end() || *it != sorted_block) return kNone;
  return std::uint32_t(it - inc.blocks.begin());
}

}  // namespace

IncidenceStructure make_incidence0(std::uint32_t n,
                                   std::vector<std::vector<std::uint32_t>> blocks0) {
  if (n > kIncidenceCap) fail(Err::CapExceeded, "ground set exceeds the incidence cap");
  IncidenceStructure inc;
  inc.n = n;
  for (auto& b : blocks0) {
    if (b.size() < 3) fail(Err::SizeMismatch, "block smaller than 3 elements");
    std::sort(b.begin(), b.end());
    for (size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= n) fail(Err::OutOfRange, "block element outside the ground set");
      if (i && b[i] == b[i - 1]) fail(Err::OutOfRange, "repeated element inside a block");
    }
    inc.blocks.push_back(std::move(b));
  }
  std::sort(inc.blocks.begin(), inc.blocks.end());
  return inc;
}

IncidenceStructure make_incidence(std::uint32_t n,
                                  const std::vector<std::vector<std::uint32_t>>& blocks1) {
  std::vector<std::vector<std::uint32_t>> b0;
  for (const auto& b : blocks1) {
    std::vector<std::uint32_t> z;
    for (auto e : b) {
      if (e == 0 || e > n) fail(Err::OutOfRange, "element labels are 1..n");
      z.push_back(e - 1);
    }
    b0.push_back(std::move(z));
  }
  return make_incidence0(n, std::move(b0));
}

ValidationReport validate(const IncidenceStructure& inc) {
  std::vector<std::uint32_t> owner(std::size_t(inc.n) * inc.n, kNone);
  for (std::uint32_t bi = 0; bi < inc.blocks.size(); ++bi) {
    const auto& b = inc.blocks[bi];
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j) {
        auto& slot = owner[std::size_t(b[i]) * inc.n + b[j]];
        if (slot != kNone) {
          const auto& a = inc.blocks[slot];
          bool contained = std::includes(b.begin(), b.end(), a.begin(), a.end()) ||
                           std::includes(a.begin(), a.end(), b.begin(), b.end());
          ValidationReport r;
          r.ok = false;
          if (contained)
            r.detail = "block " + std::to_string(slot + 1) + " is contained in block " +
                       std::to_string(bi + 1);
          else
            r.detail = "pair {" + std::to_string(b[i] + 1) + "," + std::to_string(b[j] + 1) +
                       "} is covered by blocks " + std::to_string(slot + 1) + " and " +
                       std::to_string(bi + 1);
          return r;
        }
        slot = bi;
      }
  }
  return {};
}

bool is_sts(const IncidenceStructure& inc) {
  std::uint64_t covered = 0;
  for (const auto& b : inc.blocks) {
    if (b.size() != 3) return false;
    covered += 3;
  }
  return covered == std::uint64_t(inc.n) * (inc.n - 1) / 2 && validate(inc).ok;
}

std::uint64_t schonheim_bound(std::uint64_t s) {
  if (s < 1) fail(Err::OutOfRange, "bound argument must be positive");
  std::uint64_t v = ((s - 1) / 2) * s / 3;
  if (s % 6 == 5) --v;
  return v;
}

TVector t_vector(const IncidenceStructure& inc) {
  TVector tv;
  tv.t[2] = 0;
  std::uint64_t used = 0;
  for (const auto& b : inc.blocks) {
    ++tv.t[std::uint32_t(b.size())];
    used += b.size() * (b.size() - 1) / 2;
  }
  tv.t[2] = std::uint64_t(inc.n) * (inc.n - 1) / 2 - used;
  return tv;
}

IncidenceStructure delete_element(const IncidenceStructure& inc, std::uint32_t e) {
  if (e == 0 || e > inc.n) fail(Err::OutOfRange, "element labels are 1..n");
  std::uint32_t del = e - 1;
  std::vector<std::vector<std::uint32_t>> nb;
  for (const auto& b : inc.blocks) {
    std::vector<std::uint32_t> z;
    for (auto x : b)
      if (x != del) z.push_back(x > del ? x - 1 : x);
    if (z.size() >= 3) nb.push_back(std::move(z));
  }
  return make_incidence0(inc.n - 1, std::move(nb));
}

// ---------------------------------------------------------------- PermGroup

namespace {

bool is_identity(const std::vector<std::uint32_t>& g) {
  for (std::uint32_t i = 0; i < g.size(); ++i)
    if (g[i] != i) return false;
  return true;
}

std::vector<std::uint32_t> compose(const std::vector<std::uint32_t>& f,
                                   const std::vector<std::uint32_t>& g) {
  // (f ∘ g)(x) = f(g(x))
  std::vector<std::uint32_t> r(f.size());
  for (std::uint32_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
  return r;
}

std::vector<std::uint32_t> inverse(const std::vector<std::uint32_t>& g) {
  std::vector<std::uint32_t> r(g.size());
  for (std::uint32_t i = 0; i < g.size(); ++i) r[g[i]] = i;
  return r;
}

}  // namespace

PermGroup::PermGroup(std::uint32_t n) : n_(n) {}

std::pair<std::size_t, std::vector<std::uint32_t>> PermGroup::sift_from(
    std::vector<std::uint32_t> g, std::size_t from) const {
  for (std::size_t li = from; li < levels_.size(); ++li) {
    std::uint32_t x = g[levels_[li].base];
    std::uint32_t pos = levels_[li].orbit_pos[x];
    if (pos == 0) return {li, std::move(g)};
    g = compose(inverse(levels_[li].transversal[pos - 1]), g);
  }
  return {levels_.size(), std::move(g)};
}

bool PermGroup::contains(const std::vector<std::uint32_t>& g) const {
  auto [li, r] = sift_from(g, 0);
  return li == levels_.size() && is_identity(r);
}

mpz_class PermGroup::order() const {
  mpz_class o = 1;
  for (const auto& l : levels_) o *= std::uint32_t(l.transversal.size());
  return o;
}

void PermGroup::extend_orbit(std::size_t li) {
  Level& L = levels_[li];
  L.orbit_pos.assign(n_, 0);
  L.transversal.clear();
  std::vector<std::uint32_t> id(n_);
  std::iota(id.begin(), id.end(), 0);
  L.transversal.push_back(id);
  L.orbit_pos[L.base] = 1;
  for (std::size_t head = 0; head < L.transversal.size(); ++head) {
    auto t = L.transversal[head];  // copy: the vector may reallocate below
    for (const auto& s : L.gens) {
      std::uint32_t img = s[t[L.base]];
      if (L.orbit_pos[img] == 0) {
        L.transversal.push_back(compose(s, t));
        L.orbit_pos[img] = std::uint32_t(L.transversal.size());
      }
    }
  }
}

// Adds r to the generator lists of levels lo..stop, creating a new deepest
// level when stop runs off the end. Keeps the invariant that the list at
// level i contains every generator stored at level i+1, so the orbit at each
// level is taken under the full stabilizer candidate. Afterwards the touched
// levels are re-closed deepest-first.
void PermGroup::insert_residue(std::vector<std::uint32_t> r, std::size_t lo, std::size_t stop) {
  if (stop == levels_.size()) {
    std::uint32_t moved = kNone;
    for (std::uint32_t i = 0; i < n_; ++i)
      if (r[i] != i) {
        moved = i;
        break;
      }
    levels_.push_back(Level{moved, {}, {}, {}});
  }
  for (std::size_t l = lo; l <= stop; ++l) levels_[l].gens.push_back(r);
  for (std::size_t l = stop + 1; l-- > lo;) extend_orbit(l);
  for (std::size_t l = stop + 1; l-- > lo;) close_level(l);
}

// Schreier's lemma: once every Schreier generator of the orbit at this level
// sifts to the identity through the deeper levels, those levels generate the
// full stabilizer and the order is the product of the orbit sizes.
void PermGroup::close_level(std::size_t li) {
  for (bool dirty = true; dirty;) {
    dirty = false;
    for (std::size_t ti = 0; ti < levels_[li].transversal.size() && !dirty; ++ti)
      for (std::size_t si = 0; si < levels_[li].gens.size() && !dirty; ++si) {
        const Level& L = levels_[li];
        const auto w = compose(L.gens[si], L.transversal[ti]);
        auto u = compose(inverse(L.transversal[L.orbit_pos[w[L.base]] - 1]), w);
        if (is_identity(u)) continue;
        auto [stop, r] = sift_from(std::move(u), li + 1);
        if (stop == levels_.size() && is_identity(r)) continue;
        insert_residue(std::move(r), li + 1, stop);
        dirty = true;  // deeper transversals changed; rescan this level
      }
  }
}

bool PermGroup::add(const std::vector<std::uint32_t>& g) {
  if (g.size() != n_) fail(Err::SizeMismatch, "permutation degree mismatch");
  for (std::uint32_t i = 0; i < n_; ++i)
    if (g[i] >= n_) fail(Err::OutOfRange, "permutation image out of range");
  auto [li, r] = sift_from(g, 0);
  if (li == levels_.size() && is_identity(r)) return false;
  insert_residue(std::move(r), 0, li);
  return true;
}

// ------------------------------------------------------------ automorphisms

namespace {

struct AutSearch {
  const IncidenceStructure& inc;
  std::uint32_t n;
  std::vector<std::uint32_t> pb;                       // pair -> block
  std::vector<std::vector<std::uint32_t>> elem_blocks; // element -> blocks through it
  std::vector<std::uint64_t> klass;                    // invariant class id
  std::vector<std::uint32_t> order;                    // static processing order
  std::vector<std::uint32_t> img, pre;                 // partial map and inverse
  std::vector<std::uint32_t> placed_in_block;
  std::uint64_t leaves = 0;
  PermGroup group;
  std::vector<std::vector<std::uint32_t>> gens;

  explicit AutSearch(const IncidenceStructure& s)
      : inc(s), n(s.n), pb(pair_block_map(s)), elem_blocks(s.n), group(s.n) {
    for (std::uint32_t bi = 0; bi < inc.blocks.size(); ++bi)
      for (auto e : inc.blocks[bi]) elem_blocks[e].push_back(bi);
    refine_classes();
    pick_order();
  }

  void refine_classes() {
    // iterated invariant: degree profile, then neighborhood class multisets
    std::vector<std::uint64_t> cur(n, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      std::vector<std::uint64_t> sizes;
      for (auto bi : elem_blocks[x]) sizes.push_back(inc.blocks[bi].size());
      std::sort(sizes.begin(), sizes.end());
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : sizes) h = (h ^ v) * 1099511628211ull;
      cur[x] = h;
    }
    for (int round = 0; round < 4; ++round) {
      std::vector<std::uint64_t> nxt(n);
      for (std::uint32_t x = 0; x < n; ++x) {
        std::vector<std::uint64_t> sig;
        for (auto bi : elem_blocks[x]) {
          std::vector<std::uint64_t> mem;
          for (auto e : inc.blocks[bi])
            if (e != x) mem.push_back(cur[e]);
          std::sort(mem.begin(), mem.end());
          std::uint64_t h = 14695981039346656037ull;
          for (auto v : mem) h = (h ^ v) * 1099511628211ull;
          sig.push_back(h);
        }
        std::sort(sig.begin(), sig.end());
        std::uint64_t h = cur[x];
        for (auto v : sig) h = (h ^ v) * 1099511628211ull;
        nxt[x] = h;
      }
      if (nxt == cur) break;
      cur = std::move(nxt);
    }
    klass = std::move(cur);
  }

  void pick_order() {
    std::vector<std::uint64_t> class_size(n, 0);
    std::vector<bool> done(n, false);
    auto count_of = [&](std::uint32_t x) {
      std::uint64_t c = 0;
      for (std::uint32_t y = 0; y < n; ++y)
        if (klass[y] == klass[x]) ++c;
      return c;
    };
    for (std::uint32_t x = 0; x < n; ++x) class_size[x] = count_of(x);
    for (std::uint32_t step = 0; step < n; ++step) {
      std::uint32_t best = kNone;
      std::uint64_t best_anch = 0, best_cls = ~0ull;
      for (std::uint32_t x = 0; x < n; ++x) {
        if (done[x]) continue;
        std::uint64_t anch = 0;
        for (auto y : order)
          if (pb[std::size_t(x) * n + y] != kNone) ++anch;
        if (best == kNone || anch > best_anch ||
            (anch == best_anch && class_size[x] < best_cls)) {
          best = x;
          best_anch = anch;
          best_cls = class_size[x];
        }
      }
      order.push_back(best);
      done[best] = true;
    }
  }

  bool consistent(std::uint32_t x, std::uint32_t c, std::uint32_t depth) {
    for (std::uint32_t d = 0; d < depth; ++d) {
      std::uint32_t y = order[d];
      std::uint32_t b = pb[std::size_t(x) * n + y];
      std::uint32_t b2 = pb[std::size_t(c) * n + img[y]];
      if ((b == kNone) != (b2 == kNone)) return false;
      if (b != kNone && inc.blocks[b].size() != inc.blocks[b2].size()) return false;
    }
    return true;
  }

  void dfs(std::uint32_t depth) {
    if (depth == n) {
      ++leaves;
      if (group.add(img)) gens.push_back(img);
      return;
    }
    std::uint32_t x = order[depth];
    // forced candidates: a block through x with two placed members pins the
    // image to the block through the two image points
    std::vector<std::uint32_t> cand;
    bool forced = false;
    for (auto bi : elem_blocks[x]) {
      if (placed_in_block[bi] < 2) continue;
      std::uint32_t u = kNone, v = kNone;
      for (auto e : inc.blocks[bi])
        if (e != x && img[e] != kNone) {
          if (u == kNone)
            u = e;
          else {
            v = e;
            break;
          }
        }
      if (v == kNone) continue;
      std::uint32_t target = pb[std::size_t(img[u]) * n + img[v]];
      if (target == kNone) return;  // dead branch
      forced = true;
      for (auto e : inc.blocks[target])
        if (pre[e] == kNone) cand.push_back(e);
      break;
    }
    if (!forced) {
      for (std::uint32_t c = 0; c < n; ++c)
        if (pre[c] == kNone && klass[c] == klass[x]) cand.push_back(c);
    } else {
      std::sort(cand.begin(), cand.end());
      cand.erase(std::remove_if(cand.begin(), cand.end(),
                                [&](std::uint32_t c) { return klass[c] != klass[x]; }),
                 cand.end());
    }
    for (auto c : cand) {
      if (!consistent(x, c, depth)) continue;
      img[x] = c;
      pre[c] = x;
      bool ok = true;
      for (auto bi : elem_blocks[x]) {
        if (++placed_in_block[bi] != inc.blocks[bi].size() || !ok) continue;
        std::vector<std::uint32_t> image_block;
        for (auto e : inc.blocks[bi]) image_block.push_back(img[e]);
        std::sort(image_block.begin(), image_block.end());
        std::uint32_t tb = block_index_of(inc, image_block);
        if (tb == kNone) ok = false;
      }
      if (ok) dfs(depth + 1);
      for (auto bi : elem_blocks[x]) --placed_in_block[bi];
      img[x] = kNone;
      pre[c] = kNone;
    }
  }

  AutGroupReport run() {
    img.assign(n, kNone);
    pre.assign(n, kNone);
    placed_in_block.assign(inc.blocks.size(), 0);
    dfs(0);
    AutGroupReport rep;
    rep.order = group.order();
    rep.leaves = leaves;
    if (rep.order != mpz_class(static_cast<unsigned long>(leaves)))
      throw std::logic_error("automorphism leaf count disagrees with the group order");
    rep.generators = gens;
    // orbits of the block action under the generators
    std::uint32_t nb = std::uint32_t(inc.blocks.size());
    std::vector<std::uint32_t> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto& g : gens)
      for (std::uint32_t bi = 0; bi < nb; ++bi) {
        std::vector<std::uint32_t> ib;
        for (auto e : inc.blocks[bi]) ib.push_back(g[e]);
        std::sort(ib.begin(), ib.end());
        std::uint32_t bj = block_index_of(inc, ib);
        std::uint32_t ra = find(bi), rb = find(bj);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    std::map<std::uint32_t, std::vector<std::uint32_t>> orb;
    for (std::uint32_t bi = 0; bi < nb; ++bi) orb[find(bi)].push_back(bi);
    for (auto& [root, members] : orb) rep.block_orbits.push_back(members);
    rep.block_transitive = nb > 0 && rep.block_orbits.size() == 1;
    return rep;
  }
};

}  // namespace

AutGroupReport automorphisms(const IncidenceStructure& inc) {
  if (inc.n > 31) fail(Err::CapExceeded, "automorphism search capped at 31 elements");
  if (inc.n == 0) fail(Err::OutOfRange, "empty ground set");
  AutSearch s(inc);
  return s.run();
}

// ----------------------------------------------------- contains_restriction

namespace {

struct RestrictionSearch {
  const IncidenceStructure& hay;
  const IncidenceStructure& ndl;
  std::vector<std::uint32_t> hpb, npb;
  std::vector<std::uint32_t> order, img;
  std::vector<bool> used;

  RestrictionSearch(const IncidenceStructure& h, const IncidenceStructure& m)
      : hay(h), ndl(m), hpb(pair_block_map(h)), npb(pair_block_map(m)) {
    std::vector<bool> done(ndl.n, false);
    for (std::uint32_t step = 0; step < ndl.n; ++step) {
      std::uint32_t best = kNone;
      std::uint64_t best_anch = 0;
      for (std::uint32_t x = 0; x < ndl.n; ++x) {
        if (done[x]) continue;
        std::uint64_t anch = 0;
        for (auto y : order)
          if (npb[std::size_t(x) * ndl.n + y] != kNone) ++anch;
        if (best == kNone || anch > best_anch) {
          best = x;
          best_anch = anch;
        }
      }
      order.push_back(best);
      done[best] = true;
    }
  }

  bool tri_n(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    std::uint32_t t = npb[std::size_t(a) * ndl.n + b];
    return t != kNone && t == npb[std::size_t(a) * ndl.n + c];
  }
  bool tri_h(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    std::uint32_t t = hpb[std::size_t(a) * hay.n + b];
    return t != kNone && t == hpb[std::size_t(a) * hay.n + c];
  }

  bool dfs(std::uint32_t depth) {
    if (depth == ndl.n) return true;
    std::uint32_t x = order[depth];
    for (std::uint32_t c = 0; c < hay.n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (std::uint32_t d = 0; d < depth && ok; ++d) {
        std::uint32_t y = order[d];
        // a covered needle pair must stay covered
        if (npb[std::size_t(x) * ndl.n + y] != kNone &&
            hpb[std::size_t(c) * hay.n + img[y]] == kNone)
          ok = false;
        // the triple relation must transfer exactly
        for (std::uint32_t e = 0; e < d && ok; ++e) {
          std::uint32_t z = order[e];
          if (tri_n(x, y, z) != tri_h(c, img[y], img[z])) ok = false;
        }
      }
      if (!ok) continue;
      img[x] = c;
      used[c] = true;
      if (dfs(depth + 1)) return true;
      used[c] = false;
    }
    return false;
  }

  std::optional<std::vector<std::uint32_t>> run() {
    if (ndl.n > hay.n) return std::nullopt;
    img.assign(ndl.n, kNone);
    used.assign(hay.n, false);
    if (!dfs(0)) return std::nullopt;
    return img;
  }
};

}  // namespace

std::optional<std::vector<std::uint32_t>> contains_restriction(
    const IncidenceStructure& haystack, const IncidenceStructure& needle) {
  RestrictionSearch s(haystack, needle);
  return s.run();
}

IncidenceStructure generate_pg_truncation(std::uint32_t k, std::uint64_t q) {
  if (k < 2) fail(Err::OutOfRange, "projective dimension must be at least 2");
  auto pp = prime_power(q);
  if (!pp) fail(Err::NonPrime, "order is not a prime power");
  GF f(std::uint32_t(pp->first), pp->second);
  std::uint64_t npts = point_count(q, k);
  if (npts > kIncidenceCap) fail(Err::CapExceeded, "truncation exceeds the incidence cap");
  auto lines = lines_of_pg(f, k);
  return make_incidence0(std::uint32_t(npts), std::move(lines));
}

}  // namespace orchard
