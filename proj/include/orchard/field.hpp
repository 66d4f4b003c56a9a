#pragma once

// Exact field arithmetic: prime fields F_p, extensions F_{p^k} represented as
// coefficient vectors modulo a monic irreducible, the rationals Q, and
// quadratic extensions Q(eps). No floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orchard/errors.hpp"

namespace orchard {

bool is_prime_u64(std::uint64_t n);
// q = p^j with p prime -> (p, j); nullopt otherwise
std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power(std::uint64_t q);

// Irreducibility of a monic polynomial (coefficients m0..mk, constant term
// first, mk = 1) over F_p, via Rabin's test.
bool poly_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs);

// ---------------------------------------------------------------------------
// F_{p^k}. Elements are indices in [0, p^k) packing the coefficient vector
// (c0, c1, ..., c_{k-1}) of the residue c0 + c1*x + ... with c0 as the MOST
// significant digit, so plain integer order on element indices equals
// lexicographic order on coefficient vectors, constant term compared first.
// Multiplication runs on log/antilog tables for q <= kTableCap (validated
// against the schoolbook path), and on the schoolbook path beyond that.
class GF {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint64_t kSizeCap = 1ull << 20;
  static constexpr std::uint64_t kTableCap = 1ull << 16;

  GF(std::uint32_t p, std::uint32_t k);
  GF(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

  // Lexicographically smallest monic irreducible of degree k over F_p,
  // coefficients ordered from the constant term up. Returned as m0..mk.
  static std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t k);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return one_; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem from_int(std::uint64_t v) const;
  Elem from_signed(long long v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, long long e) const;

  Elem mul_direct(Elem a, Elem b) const;  // schoolbook reference path

  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;

  bool has_tables() const { return tables_; }

  // Canonical subfield embedding into a bigger field of the same
  // characteristic: for prime fields the constant-term inclusion, otherwise
  // x -> the lexicographically first root of this field's modulus in `big`.
  // The map is verified to be an injective ring homomorphism on construction.
  class Embedding {
   public:
    Embedding(const GF& small, const GF& big);
    Elem operator()(Elem a) const { return map_[a]; }

   private:
    std::vector<Elem> map_;
  };

 private:
  void init();
  Elem pow_direct(Elem a, std::uint64_t e) const;

  std::uint32_t p_ = 0, k_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem one_ = 0;
  bool tables_ = false;
  std::vector<Elem> exp_, log_;
  std::vector<std::uint64_t> powp_;  // p^0 .. p^k, weights for digit packing
};

// ---------------------------------------------------------------------------
// Q and quadratic extensions Q(eps) with c2*eps^2 + c1*eps + c0 = 0,
// irreducible over Q. Elements are a + b*eps with a, b canonical rationals.
class QField {
 public:
  struct Elem {
    mpq_class a, b;
    bool operator==(const Elem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Elem& o) const { return !(*this == o); }
  };

  QField();                                             // plain Q
  QField(mpq_class c2, mpq_class c1, mpq_class c0);     // Q(eps)

  bool quadratic() const { return quad_; }
  const mpq_class& c2() const { return c2_; }
  const mpq_class& c1() const { return c1_; }
  const mpq_class& c0() const { return c0_; }

  Elem zero() const { return Elem{}; }
  Elem one() const { return Elem{1, 0}; }
  Elem eps() const;
  bool is_zero(const Elem& e) const { return e.a == 0 && e.b == 0; }

  Elem from_mpq(const mpq_class& v) const { return Elem{v, 0}; }
  Elem from_int(long v) const { return Elem{mpq_class(v), 0}; }
  Elem make(mpq_class a, mpq_class b) const;
  // q2*eps^2 + q1*eps + q0, reduced through the defining relation
  Elem from_eps_poly(const mpq_class& q2, const mpq_class& q1, const mpq_class& q0) const;

  Elem add(const Elem& x, const Elem& y) const { return Elem{x.a + y.a, x.b + y.b}; }
  Elem sub(const Elem& x, const Elem& y) const { return Elem{x.a - y.a, x.b - y.b}; }
  Elem neg(const Elem& x) const { return Elem{-x.a, -x.b}; }
  Elem mul(const Elem& x, const Elem& y) const;
  Elem inv(const Elem& x) const;
  Elem div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }
  Elem pow(const Elem& x, long long e) const;

  static int cmp(const Elem& x, const Elem& y);  // numeric on a, then b

 private:
  bool quad_ = false;
  mpq_class c2_, c1_, c0_;
  mpq_class s1_, s0_;  // eps^2 = s1*eps + s0
};

// Rational square root in lowest terms, if one exists (principal, >= 0).
std::optional<mpq_class> mpq_sqrt(const mpq_class& v);

// ---------------------------------------------------------------------------
// Root finding. Finite fields: full scan, any degree. Rational kinds: closed
// form up to degree 2 (UnsupportedDegree beyond). Coefficients are given from
// the constant term up; returned roots are canonically ordered and verified
// to evaluate to zero.
std::vector<GF::Elem> roots_of(const GF& F, const std::vector<GF::Elem>& coeffs);
std::vector<QField::Elem> roots_of(const QField& F, const std::vector<QField::Elem>& coeffs);

// ---------------------------------------------------------------------------
// Field descriptors and the runtime-typed boundary layer used by file formats
// and the CLI. Core algorithms are templated on GF/QField directly.

struct FieldSpec {
  enum class Kind { Finite, Rational, RationalQuadratic };
  Kind kind = Kind::Rational;
  std::uint32_t p = 0, k = 1;
  std::vector<std::uint32_t> modulus;  // finite: m0..mk, monic
  mpq_class c2, c1, c0;                // rational-quadratic, canonical integers

  static FieldSpec finite(std::uint32_t p, std::uint32_t k);
  static FieldSpec finite(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);
  static FieldSpec rational();
  static FieldSpec rational_quadratic(mpq_class c2, mpq_class c1, mpq_class c0);

  bool operator==(const FieldSpec& o) const;

  std::string header() const;  // "field ..." line, canonical form
  static FieldSpec parse_header(const std::string& line);

  std::string name() const;  // human-readable, e.g. "F_16", "Q", "Q(eps)"
};

struct FieldRt;
using FieldPtr = std::shared_ptr<const FieldRt>;

struct FieldRt {
  FieldSpec spec;
  std::shared_ptr<const GF> gf;      // exactly one of gf/qf non-null
  std::shared_ptr<const QField> qf;
  bool finite() const { return gf != nullptr; }
};

FieldPtr make_field(const FieldSpec& spec);
std::shared_ptr<const GF> make_gf(std::uint32_t p, std::uint32_t k);

// Checked boundary element: carries its field, ops verify spec equality.
struct Element {
  FieldPtr f;
  GF::Elem g{};
  QField::Elem q;
};

Element el_make(const FieldPtr& f, GF::Elem g);
Element el_make(const FieldPtr& f, QField::Elem q);
Element el_add(const Element& x, const Element& y);
Element el_sub(const Element& x, const Element& y);
Element el_mul(const Element& x, const Element& y);
Element el_div(const Element& x, const Element& y);
Element el_neg(const Element& x);
Element el_inv(const Element& x);
Element el_pow(const Element& x, long long e);
bool el_is_zero(const Element& x);
bool el_eq(const Element& x, const Element& y);

// Element literals: prime fields as plain integers, extensions as coefficient
// tuples [c0,c1,...], rationals as a/b, quadratic elements spaceless as
// a/b+c/d*eps (either part omissible).
std::string element_to_string(const FieldRt& f, const Element& e);
Element element_from_string(const FieldPtr& f, const std::string& s);

std::string gf_elem_to_string(const GF& F, GF::Elem e);
GF::Elem gf_elem_from_string(const GF& F, const std::string& s);
std::string qf_elem_to_string(const QField& F, const QField::Elem& e);
QField::Elem qf_elem_from_string(const QField& F, const std::string& s);

}  // namespace orchard
