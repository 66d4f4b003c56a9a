#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "orchard/datasets.hpp"
#include "orchard/incidence.hpp"

using namespace orchard;

namespace {

using Blocks = std::vector<std::vector<std::uint32_t>>;

// Brute-force automorphism count: try all n! permutations, keep the ones that
// map the block set onto itself. Only sensible for n <= 9.
std::uint64_t brute_aut_order(const IncidenceStructure& inc) {
  std::vector<std::uint32_t> perm(inc.n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::set<std::vector<std::uint32_t>> want(inc.blocks.begin(), inc.blocks.end());
  std::uint64_t count = 0;
  do {
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& b : inc.blocks) {
      std::vector<std::uint32_t> img;
      for (auto e : b) img.push_back(perm[e]);
      std::sort(img.begin(), img.end());
      got.insert(std::move(img));
    }
    if (got == want) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

bool tri(const std::vector<std::uint32_t>& pb, std::uint32_t n, std::uint32_t a,
         std::uint32_t b, std::uint32_t c) {
  const std::uint32_t t = pb[std::size_t(a) * n + b];
  return t != kNoBlock && t == pb[std::size_t(a) * n + c];
}

// Checks that img is an injection transferring the triple relation exactly.
bool valid_restriction(const IncidenceStructure& hay, const IncidenceStructure& ndl,
                       const std::vector<std::uint32_t>& img) {
  if (img.size() != ndl.n) return false;
  std::set<std::uint32_t> seen(img.begin(), img.end());
  if (seen.size() != ndl.n) return false;
  for (auto v : seen)
    if (v >= hay.n) return false;
  const auto hpb = pair_block_map(hay);
  const auto npb = pair_block_map(ndl);
  for (std::uint32_t a = 0; a < ndl.n; ++a)
    for (std::uint32_t b = a + 1; b < ndl.n; ++b)
      for (std::uint32_t c = b + 1; c < ndl.n; ++c)
        if (tri(npb, ndl.n, a, b, c) != tri(hpb, hay.n, img[a], img[b], img[c]))
          return false;
  return true;
}

// Unpruned oracle: enumerate every injection in natural element order.
bool brute_has_restriction(const IncidenceStructure& hay, const IncidenceStructure& ndl) {
  std::vector<std::uint32_t> img;
  std::vector<bool> used(hay.n, false);
  auto rec = [&](auto&& self, std::uint32_t depth) -> bool {
    if (depth == ndl.n) return valid_restriction(hay, ndl, img);
    for (std::uint32_t v = 0; v < hay.n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      img.push_back(v);
      if (self(self, depth + 1)) return true;
      img.pop_back();
      used[v] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

bool apply_is_automorphism(const IncidenceStructure& inc,
                           const std::vector<std::uint32_t>& perm) {
  Blocks img;
  for (const auto& b : inc.blocks) {
    std::vector<std::uint32_t> x;
    for (auto e : b) x.push_back(perm[e]);
    std::sort(x.begin(), x.end());
    img.push_back(std::move(x));
  }
  std::sort(img.begin(), img.end());
  return img == inc.blocks;
}

}  // namespace

TEST_CASE("construction and validation") {
  auto empty = make_incidence(3, {});
  CHECK(empty.n == 3);
  CHECK(empty.blocks.empty());
  CHECK(validate(empty).ok);

  auto fano = builtin_incidence("fano");
  CHECK(fano.n == 7);
  CHECK(fano.blocks.size() == 7);
  CHECK(validate(fano).ok);
  CHECK(std::is_sorted(fano.blocks.begin(), fano.blocks.end()));

  // pair {1,2} covered twice
  auto bad = make_incidence(4, {{1, 2, 3}, {1, 2, 4}});
  auto rep = validate(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.detail.find("pair") != std::string::npos);

  // containment is a special case of a doubled pair
  auto contained = make_incidence(5, {{1, 2, 3, 4}, {2, 3, 4}});
  CHECK_FALSE(validate(contained).ok);

  CHECK_THROWS_AS(make_incidence(4, {{1, 2}}), Error);          // too small
  CHECK_THROWS_AS(make_incidence(4, {{1, 2, 2}}), Error);       // repeated element
  CHECK_THROWS_AS(make_incidence(4, {{1, 2, 5}}), Error);       // out of range
  CHECK_THROWS_AS(make_incidence(4, {{0, 1, 2}}), Error);       // labels are 1-based
  CHECK_THROWS_AS(make_incidence(kIncidenceCap + 1, {}), Error);

  // 0-based entry matches the 1-based one
  auto z = make_incidence0(7, {{0, 1, 2}});
  CHECK(z.blocks[0] == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("pair_block_map") {
  auto fano = builtin_incidence("fano");
  auto pb = pair_block_map(fano);
  CHECK(pb[0 * 7 + 1] == 0);  // {1,2} lies in block 0 = {1,2,3}
  CHECK(pb[1 * 7 + 0] == 0);
  CHECK(pb[0 * 7 + 3] == 1);  // {1,4} in {1,4,5}
  auto m = builtin_incidence("matroid16_37");
  auto mpb = pair_block_map(m);
  std::uint64_t uncovered = 0;
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = i + 1; j < m.n; ++j)
      if (mpb[std::size_t(i) * m.n + j] == kNoBlock) ++uncovered;
  CHECK(uncovered == 9);  // the double points of the extremal 16-line case
}

TEST_CASE("steiner recognition") {
  CHECK(is_sts(builtin_incidence("fano")));
  CHECK(is_sts(builtin_incidence("dual_hesse")));  // AG(2,3) is the STS(9)
  CHECK(is_sts(builtin_incidence("sts13_1")));
  CHECK(is_sts(builtin_incidence("sts13_2")));
  CHECK_FALSE(is_sts(builtin_incidence("matroid16_37")));
  CHECK_FALSE(is_sts(builtin_incidence("non_pappus")));

  auto fano = builtin_incidence("fano");
  Blocks missing(fano.blocks.begin(), fano.blocks.end() - 1);
  Blocks missing1;
  for (auto& b : missing) {
    std::vector<std::uint32_t> x;
    for (auto e : b) x.push_back(e + 1);
    missing1.push_back(x);
  }
  CHECK_FALSE(is_sts(make_incidence(7, missing1)));
}

TEST_CASE("packing bound") {
  CHECK(schonheim_bound(3) == 1);
  CHECK(schonheim_bound(7) == 7);
  CHECK(schonheim_bound(9) == 12);
  const std::uint64_t expect[] = {20, 26, 28, 35, 37, 44, 48, 57};
  for (std::uint64_t s = 12; s <= 19; ++s) CHECK(schonheim_bound(s) == expect[s - 12]);
}

TEST_CASE("t-vectors") {
  auto t = t_vector(builtin_incidence("fano"));
  CHECK(t.at(3) == 7);
  CHECK(t.at(2) == 0);
  CHECK(t.at(4) == 0);

  t = t_vector(builtin_incidence("dual_hesse"));
  CHECK(t.at(3) == 12);
  CHECK(t.at(2) == 0);

  t = t_vector(builtin_incidence("sts13_1"));
  CHECK(t.at(3) == 26);
  CHECK(t.at(2) == 0);

  t = t_vector(builtin_incidence("matroid16_37"));
  CHECK(t.at(3) == 37);
  CHECK(t.at(2) == 9);

  t = t_vector(make_incidence(3, {}));
  CHECK(t.at(2) == 3);
  CHECK(t.at(3) == 0);

  t = t_vector(make_incidence(5, {{1, 2, 3, 4}}));
  CHECK(t.at(4) == 1);
  CHECK(t.at(3) == 0);
  CHECK(t.at(2) == 4);  // C(5,2) - C(4,2)
}

TEST_CASE("element deletion") {
  auto fano = builtin_incidence("fano");
  auto d = delete_element(fano, 1);
  CHECK(d.n == 6);
  Blocks want = {{0, 2, 4}, {0, 3, 5}, {1, 2, 5}, {1, 3, 4}};  // 0-based, relabeled
  CHECK(d.blocks == want);
  CHECK(t_vector(d).at(3) == 4);
  CHECK(t_vector(d).at(2) == 3);

  auto pg = generate_pg_truncation(3, 2);
  auto d15 = delete_element(pg, 7);
  CHECK(d15.n == 14);
  CHECK(t_vector(d15).at(3) == 28);
  CHECK(t_vector(d15).at(3) == schonheim_bound(14));

  CHECK_THROWS_AS(delete_element(fano, 0), Error);
  CHECK_THROWS_AS(delete_element(fano, 8), Error);
}

TEST_CASE("deletion conserves pair coverage") {
  // A surviving pair stays covered exactly when its covering block keeps at
  // least three elements; a pair inside a dying triple becomes a double point.
  for (const auto& name : {"fano", "dual_hesse", "sts13_1", "matroid16_37"}) {
    auto inc = builtin_incidence(name);
    auto pb = pair_block_map(inc);
    for (std::uint32_t e = 1; e <= inc.n; ++e) {
      auto d = delete_element(inc, e);
      REQUIRE(validate(d).ok);
      auto dpb = pair_block_map(d);
      for (std::uint32_t i = 0; i < d.n; ++i)
        for (std::uint32_t j = i + 1; j < d.n; ++j) {
          const std::uint32_t oi = i < e - 1 ? i : i + 1;  // undo the relabeling
          const std::uint32_t oj = j < e - 1 ? j : j + 1;
          const std::uint32_t t = pb[std::size_t(oi) * inc.n + oj];
          bool want = t != kNoBlock;
          if (want) {
            const auto& blk = inc.blocks[t];
            const bool hits = std::find(blk.begin(), blk.end(), e - 1) != blk.end();
            if (hits && blk.size() == 3) want = false;
          }
          REQUIRE((dpb[std::size_t(i) * d.n + j] != kNoBlock) == want);
        }
    }
  }
}

TEST_CASE("permutation groups") {
  PermGroup s4(4);
  CHECK(s4.order() == 1);
  CHECK(s4.add({1, 0, 2, 3}));
  CHECK(s4.add({1, 2, 3, 0}));
  CHECK(s4.order() == 24);
  CHECK_FALSE(s4.add({2, 1, 0, 3}));  // already inside
  CHECK(s4.contains({3, 2, 1, 0}));

  PermGroup d4(4);  // dihedral group of the square 0-1-2-3
  CHECK(d4.add({1, 2, 3, 0}));
  CHECK(d4.add({3, 2, 1, 0}));
  CHECK(d4.order() == 8);
  CHECK_FALSE(d4.contains({1, 0, 2, 3}));

  PermGroup a4(4);
  CHECK(a4.add({1, 2, 0, 3}));
  CHECK(a4.add({0, 2, 3, 1}));
  CHECK(a4.order() == 12);
  CHECK_FALSE(a4.contains({1, 0, 2, 3}));
  CHECK(a4.contains({1, 0, 3, 2}));
}

TEST_CASE("automorphism groups of the bundled structures") {
  auto rep = automorphisms(builtin_incidence("fano"));
  CHECK(rep.order == 168);
  CHECK(rep.leaves == 168);
  CHECK(rep.block_transitive);
  CHECK(rep.block_orbits.size() == 1);
  for (const auto& g : rep.generators)
    CHECK(apply_is_automorphism(builtin_incidence("fano"), g));

  rep = automorphisms(builtin_incidence("dual_hesse"));
  CHECK(rep.order == 432);
  CHECK(rep.leaves == 432);
  CHECK(rep.block_transitive);

  rep = automorphisms(generate_pg_truncation(3, 2));
  CHECK(rep.order == 20160);
  CHECK(rep.block_transitive);
  CHECK(rep.block_orbits.size() == 1);
  CHECK(rep.block_orbits[0].size() == 35);
}

TEST_CASE("automorphism counts against the factorial oracle") {
  auto id4 = make_incidence(4, {});
  CHECK(automorphisms(id4).order == 24);
  CHECK(brute_aut_order(id4) == 24);

  auto one_block = make_incidence(6, {{1, 2, 3}});
  CHECK(automorphisms(one_block).order == 36);  // S3 x S3
  CHECK(brute_aut_order(one_block) == 36);

  auto two_blocks = make_incidence(6, {{1, 2, 3}, {4, 5, 6}});
  auto rep = automorphisms(two_blocks);
  CHECK(rep.order == brute_aut_order(two_blocks));  // 3! * 3! * 2
  CHECK(rep.order == 72);
  CHECK(rep.block_transitive);

  auto fano = builtin_incidence("fano");
  CHECK(automorphisms(fano).order == brute_aut_order(fano));

  auto np = builtin_incidence("non_pappus");
  CHECK(automorphisms(np).order == brute_aut_order(np));

  auto dh = builtin_incidence("dual_hesse");
  CHECK(automorphisms(dh).order == brute_aut_order(dh));
}

TEST_CASE("sts13 automorphisms are consistent") {
  auto r1 = automorphisms(builtin_incidence("sts13_1"));
  auto r2 = automorphisms(builtin_incidence("sts13_2"));
  for (const auto& g : r1.generators)
    CHECK(apply_is_automorphism(builtin_incidence("sts13_1"), g));
  for (const auto& g : r2.generators)
    CHECK(apply_is_automorphism(builtin_incidence("sts13_2"), g));
  CHECK(r1.order != r2.order);  // the two systems are non-isomorphic
  CHECK(r1.leaves == r1.order);
  CHECK(r2.leaves == r2.order);
}

TEST_CASE("restriction containment") {
  auto fano = builtin_incidence("fano");
  auto concurrent3 = make_incidence(3, {{1, 2, 3}});
  auto generic3 = make_incidence(3, {});

  auto w = contains_restriction(fano, concurrent3);
  REQUIRE(w.has_value());
  CHECK(valid_restriction(fano, concurrent3, *w));

  w = contains_restriction(fano, generic3);
  REQUIRE(w.has_value());
  CHECK(valid_restriction(fano, generic3, *w));

  // identity embedding of a structure into itself
  w = contains_restriction(fano, fano);
  REQUIRE(w.has_value());
  CHECK(valid_restriction(fano, fano, *w));

  // planes of PG(3,2) are Fano planes
  auto pg = generate_pg_truncation(3, 2);
  w = contains_restriction(pg, fano);
  REQUIRE(w.has_value());
  CHECK(valid_restriction(pg, fano, *w));

  // no STS(9) inside an STS(13), and no Fano either
  CHECK_FALSE(contains_restriction(builtin_incidence("sts13_1"),
                                   builtin_incidence("dual_hesse")).has_value());
  CHECK_FALSE(contains_restriction(builtin_incidence("sts13_1"), fano).has_value());

  // needle larger than haystack
  CHECK_FALSE(contains_restriction(generic3, fano).has_value());
}

TEST_CASE("restriction search agrees with the unpruned oracle") {
  std::vector<IncidenceStructure> needles = {
      make_incidence(3, {}),
      make_incidence(3, {{1, 2, 3}}),
      make_incidence(4, {{1, 2, 3}}),
      make_incidence(5, {{1, 2, 3}, {1, 4, 5}}),
      make_incidence(5, {{1, 2, 3}, {3, 4, 5}}),
      make_incidence(6, {{1, 2, 3}, {4, 5, 6}}),
      make_incidence(6, {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}}),
      make_incidence(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}}),
  };
  std::vector<IncidenceStructure> hays = {
      builtin_incidence("fano"),
      builtin_incidence("non_pappus"),
      make_incidence(6, {{1, 2, 3}, {1, 4, 5}}),
      builtin_incidence("dual_hesse"),
  };
  for (const auto& ndl : needles)
    for (const auto& hay : hays) {
      auto got = contains_restriction(hay, ndl);
      const bool want = brute_has_restriction(hay, ndl);
      REQUIRE(got.has_value() == want);
      if (got) REQUIRE(valid_restriction(hay, ndl, *got));
    }
}

TEST_CASE("projective truncations") {
  auto f = generate_pg_truncation(2, 2);
  CHECK(f.n == 7);
  CHECK(f.blocks.size() == 7);
  CHECK(is_sts(f));
  CHECK(automorphisms(f).order == 168);
  CHECK(contains_restriction(f, builtin_incidence("fano")).has_value());

  auto pg32 = generate_pg_truncation(3, 2);
  CHECK(pg32.n == 15);
  CHECK(pg32.blocks.size() == 35);
  CHECK(is_sts(pg32));

  auto pg42 = generate_pg_truncation(4, 2);
  CHECK(pg42.n == 31);
  CHECK(pg42.blocks.size() == 155);
  CHECK(is_sts(pg42));

  auto pg23 = generate_pg_truncation(2, 3);
  CHECK(pg23.n == 13);
  CHECK(pg23.blocks.size() == 13);
  for (const auto& b : pg23.blocks) CHECK(b.size() == 4);
  CHECK_FALSE(is_sts(pg23));

  // deleting a point of PG(2,3) shrinks the four lines through it
  auto d = delete_element(pg23, 1);
  CHECK(t_vector(d).at(4) == 9);
  CHECK(t_vector(d).at(3) == 4);

  CHECK_THROWS_AS(generate_pg_truncation(2, 6), Error);     // not a prime power
  CHECK_THROWS_AS(generate_pg_truncation(2, 1024), Error);  // over the cap
}
