#include "orchard/datasets.hpp"

#include <algorithm>

namespace orchard {

namespace {

using Blocks = std::vector<std::vector<std::uint32_t>>;

IncidenceStructure fano() {
  return make_incidence(7, {{1, 2, 3},
                            {1, 4, 5},
                            {1, 6, 7},
                            {2, 4, 6},
                            {2, 5, 7},
                            {3, 4, 7},
                            {3, 5, 6}});
}

// The twelve lines of AG(2,3): rows, columns and the four parallel classes of
// "diagonals". Their dual arrangement is the famous one with 12 triple points
// on 9 lines.
IncidenceStructure dual_hesse() {
  return make_incidence(9, {{1, 2, 3},
                            {4, 5, 6},
                            {7, 8, 9},
                            {1, 4, 7},
                            {2, 5, 8},
                            {3, 6, 9},
                            {1, 5, 9},
                            {2, 6, 7},
                            {3, 4, 8},
                            {1, 6, 8},
                            {2, 4, 9},
                            {3, 5, 7}});
}

IncidenceStructure sts13_1() {
  return make_incidence(
      13, {{1, 2, 3},   {1, 4, 5},   {1, 6, 7},  {1, 8, 9},  {1, 10, 11},
           {1, 12, 13}, {2, 4, 6},   {2, 5, 8},  {2, 7, 9},  {2, 10, 12},
           {2, 11, 13}, {3, 4, 10},  {3, 5, 6},  {3, 7, 11}, {3, 8, 13},
           {3, 9, 12},  {4, 7, 12},  {4, 8, 11}, {4, 9, 13}, {5, 7, 13},
           {5, 9, 10},  {5, 11, 12}, {6, 8, 12}, {6, 9, 11}, {6, 10, 13},
           {7, 8, 10}});
}

IncidenceStructure sts13_2() {
  return make_incidence(
      13, {{1, 2, 3},   {1, 4, 5},   {1, 6, 7},  {1, 8, 9},  {1, 10, 11},
           {1, 12, 13}, {2, 4, 6},   {2, 5, 8},  {2, 7, 9},  {2, 10, 12},
           {2, 11, 13}, {3, 4, 10},  {3, 5, 6},  {3, 7, 11}, {3, 8, 12},
           {3, 9, 13},  {4, 7, 12},  {4, 8, 13}, {4, 9, 11}, {5, 7, 13},
           {5, 9, 10},  {5, 11, 12}, {6, 8, 11}, {6, 9, 12}, {6, 10, 13},
           {7, 8, 10}});
}

// 16 elements, 37 triples: the unique extremal configuration on 16 lines.
IncidenceStructure matroid16_37() {
  return make_incidence(
      16, {{1, 8, 9},   {1, 7, 10},  {1, 6, 11},  {1, 5, 12},  {1, 4, 13},
           {1, 3, 14},  {1, 2, 15},  {2, 7, 9},   {2, 6, 10},  {2, 5, 11},
           {2, 4, 12},  {2, 3, 13},  {2, 8, 16},  {3, 7, 8},   {3, 6, 9},
           {3, 5, 10},  {3, 4, 11},  {3, 12, 16}, {4, 6, 8},   {4, 5, 9},
           {4, 14, 15}, {4, 10, 16}, {5, 6, 7},   {5, 13, 15}, {5, 14, 16},
           {6, 13, 14}, {6, 12, 15}, {7, 12, 14}, {7, 11, 15}, {7, 13, 16},
           {8, 12, 13}, {8, 11, 14}, {8, 10, 15}, {9, 11, 13}, {9, 10, 14},
           {9, 15, 16}, {10, 11, 12}});
}

// Rank-3 matroid that is realizable over no field at all (Pappus fails).
IncidenceStructure non_pappus() {
  return make_incidence(9, {{1, 2, 3},
                            {4, 5, 6},
                            {1, 5, 7},
                            {1, 6, 8},
                            {2, 4, 7},
                            {2, 6, 9},
                            {3, 4, 8},
                            {3, 5, 9}});
}

Arrangement finite_arrangement(std::uint32_t p, const std::vector<std::vector<int>>& rows) {
  FieldPtr f = make_field(FieldSpec::finite(p, 1));
  const GF& gf = *f->gf;
  std::vector<FVec<GF>> cols(rows[0].size());
  for (size_t j = 0; j < cols.size(); ++j) {
    cols[j].resize(3);
    for (size_t i = 0; i < 3; ++i) cols[j][i] = gf.from_signed(rows[i][j]);
  }
  return make_arrangement(std::move(f), std::move(cols));
}

Arrangement f7_13() {
  return finite_arrangement(
      7, {{1, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0, 1},
          {1, 4, 3, 0, 5, 1, 0, 1, 3, 4, 5, 0, 1},
          {1, 6, 4, 2, 6, 1, 0, 0, 1, 0, 2, 1, 4}});
}

Arrangement f11_16() {
  return finite_arrangement(
      11, {{1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1},
           {0, 1, 0, 1, 5, 7, 6, 6, 7, 5, 1, 8, 1, 0, 3, 8},
           {0, 0, 1, 1, 2, 3, 8, 10, 8, 3, 2, 1, 1, 7, 0, 10}});
}

Arrangement sporadic19() {
  return finite_arrangement(
      11, {{1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
           {0, 1, 0, 1, 0, 1, 1, 10, 2, 3, 4, 8, 10, 6, 8, 2, 6, 3, 4},
           {0, 0, 1, 0, 1, 5, 6, 1, 10, 7, 6, 3, 4, 2, 10, 7, 4, 2, 3}});
}

// 16 lines over Q(eps), 4*eps^2 - 6*eps + 1 = 0. Entries are given as
// polynomials in eps (coefficients of eps^2, eps, 1) and reduced through the
// defining relation on construction. The lines are ordered so that the labels
// match the bundled 37-triple configuration position for position (the same
// ordering the F_11 matrix uses).
Arrangement qeps16() {
  struct P {
    long q2, q1, q0;
  };
  // clang-format off
  static const P rows[3][16] = {
      {{0,0,1},{0,0,0},{0,0,0},{0,0,1},{0,0,1},{0,0,1},{0,0,1},{0,0,1},
       {0,0,1},{0,0,1},{0,0,1},{0,0,1},{0,0,0},{0,0,1},{0,0,1},{0,0,1}},
      {{0,0,0},{0,0,1},{0,0,0},{0,0,1},{0,-2,3},{0,2,-2},{-2,3,0},{-2,3,0},
       {0,2,-2},{0,-2,3},{0,0,1},{-2,2,1},{0,0,1},{0,0,0},{0,-2,1},{-2,2,1}},
      {{0,0,0},{0,0,0},{0,0,1},{0,0,1},{0,0,2},{0,4,-4},{0,2,-1},{0,1,0},
       {0,2,-1},{0,4,-4},{0,0,2},{0,0,1},{0,0,1},{0,2,-2},{0,0,0},{0,1,0}}};
  // clang-format on
  FieldPtr f = make_field(FieldSpec::rational_quadratic(4, -6, 1));
  const QField& qf = *f->qf;
  std::vector<FVec<QField>> cols(16);
  for (size_t j = 0; j < 16; ++j) {
    cols[j].resize(3);
    for (size_t i = 0; i < 3; ++i) {
      const P& e = rows[i][j];
      cols[j][i] = qf.from_eps_poly(e.q2, e.q1, e.q0);
    }
  }
  return make_arrangement(std::move(f), std::move(cols));
}

}  // namespace

IncidenceStructure builtin_incidence(const std::string& name) {
  if (name == "fano") return fano();
  if (name == "dual_hesse") return dual_hesse();
  if (name == "sts13_1") return sts13_1();
  if (name == "sts13_2") return sts13_2();
  if (name == "matroid16_37") return matroid16_37();
  if (name == "non_pappus") return non_pappus();
  fail(Err::UnknownName, "no bundled incidence structure named '" + name + "'");
}

Arrangement builtin_arrangement(const std::string& name) {
  if (name == "f7_13") return f7_13();
  if (name == "f11_16") return f11_16();
  if (name == "sporadic19") return sporadic19();
  if (name == "qeps16") return qeps16();
  fail(Err::UnknownName, "no bundled arrangement named '" + name + "'");
}

std::vector<std::string> builtin_incidence_names() {
  return {"fano", "dual_hesse", "sts13_1", "sts13_2", "matroid16_37", "non_pappus"};
}

std::vector<std::string> builtin_arrangement_names() {
  return {"f7_13", "f11_16", "qeps16", "sporadic19"};
}

}  // namespace orchard
