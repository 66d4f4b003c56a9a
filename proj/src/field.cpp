#include "orchard/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace orchard {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    std::uint32_t j = 0;
    std::uint64_t m = q;
    while (m % p == 0) m /= p, ++j;
    if (m != 1) return std::nullopt;
    return std::make_pair(p, j);
  }
  return std::make_pair(q, 1u);  // q itself prime
}

// ------------------------------------------------------------ F_p[x] helpers

namespace {

using Poly = std::vector<std::uint32_t>;  // c0 first

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  }
  return r;
}

// a mod f, f monic
Poly pmod(Poly a, const Poly& f, std::uint32_t p) {
  ptrim(a);
  size_t df = f.size() - 1;
  while (a.size() > df) {
    std::uint32_t lead = a.back();
    size_t shift = a.size() - 1 - df;
    if (lead) {
      for (size_t i = 0; i < f.size(); ++i) {
        std::uint64_t sub = std::uint64_t(lead) * f[i] % p;
        std::uint32_t& c = a[shift + i];
        c = std::uint32_t((c + p - sub) % p);
      }
    }
    a.pop_back();
    ptrim(a);
  }
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  return pmod(pmul(a, b, p), f, p);
}

Poly ppowmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = pmod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p prime, a != 0
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    std::int64_t qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  return std::uint32_t(((t % p) + p) % p);
}

Poly pgcd(Poly a, Poly b, std::uint32_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // reduce a mod b (b not necessarily monic: scale)
    std::uint32_t il = inv_mod_p(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = std::uint32_t(std::uint64_t(c) * il % p);
    a = pmod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool poly_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs) {
  if (coeffs.size() < 2 || coeffs.back() != 1) return false;
  std::uint32_t k = std::uint32_t(coeffs.size() - 1);
  if (k == 1) return true;
  const Poly& f = coeffs;
  Poly x{0, 1};
  // x^(p^k) == x mod f
  std::uint64_t pk = 1;
  for (std::uint32_t i = 0; i < k; ++i) pk *= p;
  Poly xs = ppowmod(x, pk, f, p);
  Poly diff = xs;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = std::uint32_t((diff[1] + p - 1) % p);
  ptrim(diff);
  if (!diff.empty()) return false;
  // gcd(x^(p^(k/l)) - x, f) constant for every prime l | k
  for (std::uint64_t l : prime_divisors(k)) {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < k / l; ++i) e *= p;
    Poly xe = ppowmod(x, e, f, p);
    Poly d = xe;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = std::uint32_t((d[1] + p - 1) % p);
    ptrim(d);
    Poly g = pgcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// ------------------------------------------------------------------- GF

GF::GF(std::uint32_t p, std::uint32_t k) : GF(p, k, canonical_modulus(p, k)) {}

GF::GF(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  if (!is_prime_u64(p_)) fail(Err::NonPrime, "characteristic " + std::to_string(p_) + " is not prime");
  if (k_ < 1) fail(Err::BadDegree, "extension degree must be >= 1");
  q_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    q_ *= p_;
    if (q_ > kSizeCap) fail(Err::CapExceeded, "field size exceeds cap");
  }
  if (modulus_.size() != size_t(k_) + 1 || modulus_.back() != 1)
    fail(Err::ReducibleModulus, "modulus must be monic of degree k");
  for (auto c : modulus_)
    if (c >= p_) fail(Err::ReducibleModulus, "modulus coefficient out of range");
  if (!poly_irreducible(p_, modulus_))
    fail(Err::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p_));
  init();
}

std::vector<std::uint32_t> GF::canonical_modulus(std::uint32_t p, std::uint32_t k) {
  if (!is_prime_u64(p)) fail(Err::NonPrime, "characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) fail(Err::BadDegree, "extension degree must be >= 1");
  if (k == 1) return {0, 1};
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    total *= p;
    if (total > kSizeCap) fail(Err::CapExceeded, "field size exceeds cap");
  }
  // enumerate (m0..m_{k-1}) in lex order, constant term compared first
  std::vector<std::uint32_t> m(k + 1, 0);
  m[k] = 1;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // decompose idx with m0 as the most significant digit: integer order on
    // idx is then lex order on (m0..m_{k-1})
    std::uint64_t v = idx, w = total / p;
    for (std::uint32_t i = 0; i < k; ++i) {
      m[i] = std::uint32_t(v / w);
      v %= w;
      w /= p;
    }
    if (poly_irreducible(p, m)) return m;
  }
  fail(Err::ReducibleModulus, "no irreducible modulus found");  // unreachable
}

void GF::init() {
  powp_.resize(k_ + 1);
  powp_[0] = 1;
  for (std::uint32_t i = 1; i <= k_; ++i) powp_[i] = powp_[i - 1] * p_;
  one_ = (k_ == 1) ? 1 : Elem(powp_[k_ - 1]);
  if (q_ <= kTableCap && q_ > 2) {
    // find the first primitive element in canonical order
    auto divisors = prime_divisors(q_ - 1);
    Elem g = 0;
    for (Elem cand = 1; cand < q_; ++cand) {
      bool ok = true;
      for (auto l : divisors) {
        if (pow_direct(cand, (q_ - 1) / l) == one_) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = cand;
        break;
      }
    }
    exp_.resize(q_ - 1);
    log_.assign(q_, 0xFFFFFFFFu);
    Elem cur = one_;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      log_[cur] = Elem(i);
      cur = mul_direct(cur, g);
    }
    tables_ = true;
  } else if (q_ == 2) {
    exp_ = {1};
    log_.assign(2, 0xFFFFFFFFu);
    log_[1] = 0;
    tables_ = true;
  }
}

GF::Elem GF::from_int(std::uint64_t v) const {
  std::uint32_t c = std::uint32_t(v % p_);
  return k_ == 1 ? c : Elem(c * powp_[k_ - 1]);
}

GF::Elem GF::from_signed(long long v) const {
  long long m = v % (long long)p_;
  if (m < 0) m += p_;
  return from_int(std::uint64_t(m));
}

GF::Elem GF::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (k_ == 1) {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint64_t w = powp_[k_ - 1 - i];
    std::uint32_t da = std::uint32_t(a / w % p_), db = std::uint32_t(b / w % p_);
    std::uint32_t s = da + db;
    if (s >= p_) s -= p_;
    r += Elem(s * w);
  }
  return r;
}

GF::Elem GF::neg(Elem a) const {
  if (p_ == 2) return a;
  if (k_ == 1) return a ? p_ - a : 0;
  Elem r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint64_t w = powp_[k_ - 1 - i];
    std::uint32_t d = std::uint32_t(a / w % p_);
    r += Elem((d ? p_ - d : 0) * w);
  }
  return r;
}

GF::Elem GF::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GF::Elem GF::mul_direct(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (k_ == 1) return Elem(std::uint64_t(a) * b % p_);
  std::uint32_t ca[64], cb[64];
  std::uint64_t t[127] = {0};
  for (std::uint32_t i = 0; i < k_; ++i) {
    ca[i] = std::uint32_t(a / powp_[k_ - 1 - i] % p_);
    cb[i] = std::uint32_t(b / powp_[k_ - 1 - i] % p_);
  }
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (!ca[i]) continue;
    for (std::uint32_t j = 0; j < k_; ++j) t[i + j] += std::uint64_t(ca[i]) * cb[j];
  }
  for (std::uint32_t d = 2 * k_ - 2; d >= k_; --d) {
    std::uint64_t lead = t[d] % p_;
    if (lead) {
      // x^d = x^(d-k) * (x^k mod f) = -x^(d-k) * (m0 + ... + m_{k-1} x^{k-1})
      for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint64_t sub = lead * modulus_[i] % p_;
        t[d - k_ + i] += p_ - sub;
      }
    }
    t[d] = 0;
    if (d == k_) break;
  }
  Elem r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) r += Elem((t[i] % p_) * powp_[k_ - 1 - i]);
  return r;
}

GF::Elem GF::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (tables_) {
    std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  return mul_direct(a, b);
}

GF::Elem GF::pow_direct(Elem a, std::uint64_t e) const {
  Elem r = one_;
  while (e) {
    if (e & 1) r = mul_direct(r, a);
    a = mul_direct(a, a);
    e >>= 1;
  }
  return r;
}

GF::Elem GF::inv(Elem a) const {
  if (a == 0) fail(Err::DivisionByZero, "inverse of zero");
  if (tables_) {
    std::uint64_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
  }
  return pow_direct(a, q_ - 2);
}

GF::Elem GF::div(Elem a, Elem b) const { return mul(a, inv(b)); }

GF::Elem GF::pow(Elem a, long long e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return one_;
    fail(Err::DivisionByZero, "zero to a negative power");
  }
  long long m = e % (long long)(q_ - 1);
  if (m < 0) m += q_ - 1;
  if (tables_) {
    std::uint64_t l = std::uint64_t(log_[a]) * std::uint64_t(m) % (q_ - 1);
    return exp_[l];
  }
  return pow_direct(a, std::uint64_t(m));
}

std::vector<std::uint32_t> GF::coeffs(Elem a) const {
  std::vector<std::uint32_t> c(k_);
  for (std::uint32_t i = 0; i < k_; ++i) c[i] = std::uint32_t(a / powp_[k_ - 1 - i] % p_);
  return c;
}

GF::Elem GF::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() != k_) fail(Err::SizeMismatch, "coefficient vector has wrong length");
  Elem r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) r += Elem((c[i] % p_) * powp_[k_ - 1 - i]);
  return r;
}

GF::Embedding::Embedding(const GF& small, const GF& big) {
  if (small.p() != big.p() || big.k() % small.k() != 0)
    fail(Err::FieldMismatch, "no subfield embedding");
  map_.assign(small.q(), 0);
  if (small.k() == 1) {
    for (GF::Elem a = 0; a < small.q(); ++a) map_[a] = big.from_int(a);
  } else {
    // image of x = lexicographically first root of the small modulus in big
    GF::Elem r = 0;
    bool found = false;
    for (GF::Elem cand = 0; cand < big.q(); ++cand) {
      GF::Elem acc = big.zero();
      for (std::uint32_t i = std::uint32_t(small.modulus().size()); i-- > 0;)
        acc = big.add(big.mul(acc, cand), big.from_int(small.modulus()[i]));
      if (acc == 0) {
        r = cand;
        found = true;
        break;
      }
    }
    if (!found) fail(Err::FieldMismatch, "modulus has no root in the big field");
    for (GF::Elem a = 0; a < small.q(); ++a) {
      auto c = small.coeffs(a);
      GF::Elem acc = big.zero();
      for (std::uint32_t i = small.k(); i-- > 0;)
        acc = big.add(big.mul(acc, r), big.from_int(c[i]));
      map_[a] = acc;
    }
  }
  // verify: injective ring homomorphism
  std::vector<bool> seen(big.q(), false);
  for (GF::Elem a = 0; a < small.q(); ++a) {
    if (seen[map_[a]]) fail(Err::FieldMismatch, "embedding not injective");
    seen[map_[a]] = true;
  }
  if (map_[small.one()] != big.one()) fail(Err::FieldMismatch, "embedding misses identity");
  for (GF::Elem a = 0; a < small.q(); ++a)
    for (GF::Elem b = 0; b < small.q(); ++b) {
      if (map_[small.add(a, b)] != big.add(map_[a], map_[b]) ||
          map_[small.mul(a, b)] != big.mul(map_[a], map_[b]))
        fail(Err::FieldMismatch, "embedding is not a homomorphism");
    }
}

// ------------------------------------------------------------------- QField

QField::QField() = default;

QField::QField(mpq_class c2, mpq_class c1, mpq_class c0)
    : quad_(true), c2_(std::move(c2)), c1_(std::move(c1)), c0_(std::move(c0)) {
  if (c2_ == 0) fail(Err::BadDegree, "defining polynomial must be quadratic");
  mpq_class disc = c1_ * c1_ - 4 * c2_ * c0_;
  if (mpq_sqrt(disc)) fail(Err::ReducibleQuadratic, "defining quadratic has a rational root");
  s1_ = -c1_ / c2_;
  s0_ = -c0_ / c2_;
}

QField::Elem QField::eps() const {
  if (!quad_) fail(Err::OutOfRange, "plain Q has no eps");
  return Elem{0, 1};
}

QField::Elem QField::make(mpq_class a, mpq_class b) const {
  // mpq_class(n, d) does not canonicalize; GMP arithmetic assumes canonical form
  a.canonicalize();
  b.canonicalize();
  if (!quad_ && b != 0) fail(Err::OutOfRange, "plain Q has no eps component");
  return Elem{std::move(a), std::move(b)};
}

QField::Elem QField::from_eps_poly(const mpq_class& q2, const mpq_class& q1,
                                   const mpq_class& q0) const {
  if (!quad_) {
    if (q2 != 0 || q1 != 0) fail(Err::OutOfRange, "plain Q has no eps component");
    return Elem{q0, 0};
  }
  return Elem{q0 + q2 * s0_, q1 + q2 * s1_};
}

QField::Elem QField::mul(const Elem& x, const Elem& y) const {
  if (!quad_) return Elem{x.a * y.a, 0};
  mpq_class bb = x.b * y.b;
  return Elem{x.a * y.a + bb * s0_, x.a * y.b + x.b * y.a + bb * s1_};
}

QField::Elem QField::inv(const Elem& x) const {
  if (is_zero(x)) fail(Err::DivisionByZero, "inverse of zero");
  if (!quad_) return Elem{1 / x.a, 0};
  mpq_class n = x.a * x.a + x.a * x.b * s1_ - x.b * x.b * s0_;
  // n == 0 would force a rational root of the defining quadratic
  return Elem{(x.a + x.b * s1_) / n, -x.b / n};
}

QField::Elem QField::pow(const Elem& x, long long e) const {
  Elem base = x;
  if (e < 0) {
    base = inv(base);
    e = -e;
  }
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int QField::cmp(const Elem& x, const Elem& y) {
  int c = ::cmp(x.a, y.a);
  if (c) return c;
  return ::cmp(x.b, y.b);
}

std::optional<mpq_class> mpq_sqrt(const mpq_class& v) {
  if (v < 0) return std::nullopt;
  mpz_class num = v.get_num(), den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn) / mpq_class(rd);
}

// ------------------------------------------------------------------- roots

std::vector<GF::Elem> roots_of(const GF& F, const std::vector<GF::Elem>& coeffs) {
  bool all_zero = true;
  for (auto c : coeffs)
    if (!F.is_zero(c)) all_zero = false;
  if (all_zero) fail(Err::OutOfRange, "zero polynomial");
  std::vector<GF::Elem> out;
  for (GF::Elem x = 0; x < F.q(); ++x) {
    GF::Elem acc = F.zero();
    for (size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs[i]);
    if (F.is_zero(acc)) out.push_back(x);
  }
  return out;
}

namespace {

// all y in Q(eps) (or Q) with y^2 = d
std::vector<QField::Elem> qf_sqrts(const QField& F, const QField::Elem& d) {
  std::vector<QField::Elem> out;
  auto push_one = [&](const QField::Elem& y) {
    if (!(F.mul(y, y) == d)) return;
    for (auto& o : out)
      if (o == y) return;
    out.push_back(y);
  };
  auto push = [&](const QField::Elem& y) {
    push_one(y);
    push_one(F.neg(y));
  };
  if (d.b == 0) {
    if (auto r = mpq_sqrt(d.a)) push(F.make(*r, 0));
    if (F.quadratic() && d.a != 0) {
      // y = x + w*eps with w != 0 forces x = -w*s1/2; then w^2*(s1^2/4 + s0) = d.a
      mpq_class s1 = -F.c1() / F.c2(), s0 = -F.c0() / F.c2();
      mpq_class den = s1 * s1 / 4 + s0;
      if (den != 0) {
        if (auto w = mpq_sqrt(d.a / den)) {
          if (*w != 0) push(F.make(-(*w) * s1 / 2, *w));
        }
      }
    }
  } else {
    // (x + w*eps)^2 = d: with t = w^2,
    // t^2*(s1^2+4*s0) - t*(2*d.b*s1 + 4*d.a) + d.b^2 = 0
    mpq_class s1 = -F.c1() / F.c2(), s0 = -F.c0() / F.c2();
    mpq_class A = s1 * s1 + 4 * s0, B = -(2 * d.b * s1 + 4 * d.a), C = d.b * d.b;
    std::vector<mpq_class> ts;
    if (A == 0) {
      if (B != 0) ts.push_back(-C / B);
    } else {
      mpq_class disc = B * B - 4 * A * C;
      if (auto r = mpq_sqrt(disc)) {
        ts.push_back((-B + *r) / (2 * A));
        ts.push_back((-B - *r) / (2 * A));
      }
    }
    for (const auto& t : ts) {
      if (t <= 0) continue;
      if (auto w = mpq_sqrt(t)) {
        if (*w == 0) continue;
        mpq_class x = (d.b - t * s1) / (2 * (*w));
        push(F.make(x, *w));
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const QField::Elem& a, const QField::Elem& b) { return QField::cmp(a, b) < 0; });
  return out;
}

}  // namespace

std::vector<QField::Elem> roots_of(const QField& F, const std::vector<QField::Elem>& coeffs) {
  std::vector<QField::Elem> c = coeffs;
  while (!c.empty() && F.is_zero(c.back())) c.pop_back();
  if (c.empty()) fail(Err::OutOfRange, "zero polynomial");
  size_t deg = c.size() - 1;
  std::vector<QField::Elem> out;
  if (deg == 0) return out;
  if (deg == 1) {
    out.push_back(F.neg(F.div(c[0], c[1])));
  } else if (deg == 2) {
    QField::Elem disc = F.sub(F.mul(c[1], c[1]), F.mul(F.make(4, 0), F.mul(c[2], c[0])));
    QField::Elem twoa = F.mul(F.make(2, 0), c[2]);
    for (const auto& s : qf_sqrts(F, disc)) {
      QField::Elem r = F.div(F.add(F.neg(c[1]), s), twoa);
      bool dup = false;
      for (auto& o : out)
        if (o == r) dup = true;
      if (!dup) out.push_back(r);
    }
  } else {
    fail(Err::UnsupportedDegree, "closed form only up to degree 2 over rational kinds");
  }
  // verify and order canonically
  std::vector<QField::Elem> ver;
  for (const auto& r : out) {
    QField::Elem acc = F.zero();
    for (size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, r), c[i]);
    if (F.is_zero(acc)) {
      bool dup = false;
      for (auto& o : ver)
        if (o == r) dup = true;
      if (!dup) ver.push_back(r);
    }
  }
  std::sort(ver.begin(), ver.end(),
            [](const QField::Elem& a, const QField::Elem& b) { return QField::cmp(a, b) < 0; });
  return ver;
}

// ------------------------------------------------------------------- specs

FieldSpec FieldSpec::finite(std::uint32_t p, std::uint32_t k) {
  return finite(p, k, GF::canonical_modulus(p, k));
}

FieldSpec FieldSpec::finite(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) {
  FieldSpec s;
  s.kind = Kind::Finite;
  s.p = p;
  s.k = k;
  s.modulus = std::move(modulus);
  return s;
}

FieldSpec FieldSpec::rational() {
  FieldSpec s;
  s.kind = Kind::Rational;
  return s;
}

FieldSpec FieldSpec::rational_quadratic(mpq_class c2, mpq_class c1, mpq_class c0) {
  FieldSpec s;
  s.kind = Kind::RationalQuadratic;
  // canonical form: primitive integer coefficients, positive leading one
  mpz_class l = lcm(lcm(c2.get_den(), c1.get_den()), c0.get_den());
  mpz_class a2 = c2.get_num() * (l / c2.get_den());
  mpz_class a1 = c1.get_num() * (l / c1.get_den());
  mpz_class a0 = c0.get_num() * (l / c0.get_den());
  mpz_class g = gcd(gcd(a2, a1), a0);
  if (g == 0) g = 1;
  if (a2 < 0) g = -g;
  s.c2 = mpq_class(a2 / g);
  s.c1 = mpq_class(a1 / g);
  s.c0 = mpq_class(a0 / g);
  return s;
}

bool FieldSpec::operator==(const FieldSpec& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Finite:
      return p == o.p && k == o.k && modulus == o.modulus;
    case Kind::Rational:
      return true;
    case Kind::RationalQuadratic:
      return c2 == o.c2 && c1 == o.c1 && c0 == o.c0;
  }
  return false;
}

std::string FieldSpec::header() const {
  std::ostringstream os;
  os << "field ";
  switch (kind) {
    case Kind::Finite:
      os << p << " " << k;
      for (auto m : modulus) os << " " << m;
      break;
    case Kind::Rational:
      os << "Q";
      break;
    case Kind::RationalQuadratic:
      os << "Qquad " << c2.get_str() << " " << c1.get_str() << " " << c0.get_str();
      break;
  }
  return os.str();
}

namespace {

mpq_class parse_mpq(const std::string& tok) {
  if (tok.empty()) fail(Err::ParseError, "empty rational literal");
  mpq_class v;
  if (v.set_str(tok, 10) != 0) fail(Err::ParseError, "bad rational literal '" + tok + "'");
  if (v.get_den() == 0) fail(Err::ParseError, "zero denominator in '" + tok + "'");
  v.canonicalize();
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

FieldSpec FieldSpec::parse_header(const std::string& line) {
  auto toks = split_ws(line);
  size_t i = 0;
  if (!toks.empty() && toks[0] == "field") i = 1;
  if (i >= toks.size()) fail(Err::ParseError, "empty field header");
  if (toks[i] == "Q") {
    if (toks.size() != i + 1) fail(Err::ParseError, "trailing tokens after 'field Q'");
    return rational();
  }
  if (toks[i] == "Qquad") {
    if (toks.size() != i + 4) fail(Err::ParseError, "field Qquad needs exactly 3 coefficients");
    return rational_quadratic(parse_mpq(toks[i + 1]), parse_mpq(toks[i + 2]),
                              parse_mpq(toks[i + 3]));
  }
  auto num = [&](size_t j) -> std::uint64_t {
    try {
      size_t pos = 0;
      unsigned long long v = std::stoull(toks[j], &pos);
      if (pos != toks[j].size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(Err::ParseError, "bad field header token '" + toks[j] + "'");
    }
  };
  if (toks.size() < i + 2) fail(Err::ParseError, "field header needs p and k");
  std::uint32_t p = std::uint32_t(num(i)), k = std::uint32_t(num(i + 1));
  if (toks.size() == i + 2) return finite(p, k);
  if (toks.size() != i + 2 + k + 1)
    fail(Err::ParseError, "field header modulus must have k+1 coefficients");
  std::vector<std::uint32_t> mod;
  for (size_t j = i + 2; j < toks.size(); ++j) mod.push_back(std::uint32_t(num(j)));
  return finite(p, k, std::move(mod));
}

std::string FieldSpec::name() const {
  switch (kind) {
    case Kind::Finite: {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < k; ++i) q *= p;
      return "F_" + std::to_string(q);
    }
    case Kind::Rational:
      return "Q";
    case Kind::RationalQuadratic:
      return "Q(eps)";
  }
  return "?";
}

FieldPtr make_field(const FieldSpec& spec) {
  auto rt = std::make_shared<FieldRt>();
  rt->spec = spec;
  switch (spec.kind) {
    case FieldSpec::Kind::Finite:
      rt->gf = spec.modulus.empty()
                   ? std::make_shared<const GF>(spec.p, spec.k)
                   : std::make_shared<const GF>(spec.p, spec.k, spec.modulus);
      rt->spec.modulus = rt->gf->modulus();
      break;
    case FieldSpec::Kind::Rational:
      rt->qf = std::make_shared<const QField>();
      break;
    case FieldSpec::Kind::RationalQuadratic:
      rt->qf = std::make_shared<const QField>(spec.c2, spec.c1, spec.c0);
      break;
  }
  return rt;
}

std::shared_ptr<const GF> make_gf(std::uint32_t p, std::uint32_t k) {
  return std::make_shared<const GF>(p, k);
}

// ------------------------------------------------------- checked elements

Element el_make(const FieldPtr& f, GF::Elem g) {
  if (!f->finite()) fail(Err::FieldMismatch, "finite payload for non-finite field");
  return Element{f, g, {}};
}

Element el_make(const FieldPtr& f, QField::Elem q) {
  if (f->finite()) fail(Err::FieldMismatch, "rational payload for finite field");
  return Element{f, 0, std::move(q)};
}

namespace {
void check_same(const Element& x, const Element& y) {
  if (!x.f || !y.f || !(x.f->spec == y.f->spec))
    fail(Err::FieldMismatch, "elements of different fields");
}
}  // namespace

Element el_add(const Element& x, const Element& y) {
  check_same(x, y);
  if (x.f->finite()) return Element{x.f, x.f->gf->add(x.g, y.g), {}};
  return Element{x.f, 0, x.f->qf->add(x.q, y.q)};
}

Element el_sub(const Element& x, const Element& y) {
  check_same(x, y);
  if (x.f->finite()) return Element{x.f, x.f->gf->sub(x.g, y.g), {}};
  return Element{x.f, 0, x.f->qf->sub(x.q, y.q)};
}

Element el_mul(const Element& x, const Element& y) {
  check_same(x, y);
  if (x.f->finite()) return Element{x.f, x.f->gf->mul(x.g, y.g), {}};
  return Element{x.f, 0, x.f->qf->mul(x.q, y.q)};
}

Element el_div(const Element& x, const Element& y) {
  check_same(x, y);
  if (x.f->finite()) return Element{x.f, x.f->gf->div(x.g, y.g), {}};
  return Element{x.f, 0, x.f->qf->div(x.q, y.q)};
}

Element el_neg(const Element& x) {
  if (x.f->finite()) return Element{x.f, x.f->gf->neg(x.g), {}};
  return Element{x.f, 0, x.f->qf->neg(x.q)};
}

Element el_inv(const Element& x) {
  if (x.f->finite()) return Element{x.f, x.f->gf->inv(x.g), {}};
  return Element{x.f, 0, x.f->qf->inv(x.q)};
}

Element el_pow(const Element& x, long long e) {
  if (x.f->finite()) return Element{x.f, x.f->gf->pow(x.g, e), {}};
  return Element{x.f, 0, x.f->qf->pow(x.q, e)};
}

bool el_is_zero(const Element& x) {
  return x.f->finite() ? x.f->gf->is_zero(x.g) : x.f->qf->is_zero(x.q);
}

bool el_eq(const Element& x, const Element& y) {
  check_same(x, y);
  return x.f->finite() ? x.g == y.g : x.q == y.q;
}

// --------------------------------------------------------- element literals

std::string gf_elem_to_string(const GF& F, GF::Elem e) {
  if (F.k() == 1) return std::to_string(e);
  auto c = F.coeffs(e);
  std::string s = "[";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

GF::Elem gf_elem_from_string(const GF& F, const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!isspace((unsigned char)ch)) s += ch;
  if (s.empty()) fail(Err::ParseError, "empty element literal");
  if (F.k() == 1) {
    try {
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("");
      return F.from_signed(v);
    } catch (...) {
      fail(Err::ParseError, "bad element literal '" + raw + "'");
    }
  }
  if (s.front() != '[' || s.back() != ']')
    fail(Err::ParseError, "extension element literal must be [c0,c1,...]");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<std::uint32_t> c;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) fail(Err::ParseError, "empty coefficient in '" + raw + "'");
    try {
      size_t pos = 0;
      long long v = std::stoll(cur, &pos);
      if (pos != cur.size()) throw std::invalid_argument("");
      long long m = v % (long long)F.p();
      if (m < 0) m += F.p();
      c.push_back(std::uint32_t(m));
    } catch (...) {
      fail(Err::ParseError, "bad coefficient '" + cur + "'");
    }
    cur.clear();
  };
  for (char ch : body) {
    if (ch == ',')
      flush();
    else
      cur += ch;
  }
  flush();
  if (c.size() != F.k()) fail(Err::ParseError, "element literal has wrong arity");
  return F.from_coeffs(c);
}

std::string qf_elem_to_string(const QField& F, const QField::Elem& e) {
  (void)F;
  if (e.b == 0) return e.a.get_str();
  mpq_class ab = abs(e.b);
  std::string eps_part = ab.get_str() + "*eps";
  if (e.a == 0) return (e.b < 0 ? "-" : "") + eps_part;
  return e.a.get_str() + (e.b < 0 ? "-" : "+") + eps_part;
}

QField::Elem qf_elem_from_string(const QField& F, const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!isspace((unsigned char)ch)) s += ch;
  if (s.empty()) fail(Err::ParseError, "empty element literal");
  mpq_class a = 0, b = 0;
  size_t i = 0;
  while (i < s.size()) {
    size_t start = i;
    if (s[i] == '+' || s[i] == '-') ++i;
    while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
    std::string seg = s.substr(start, i - start);
    bool negv = !seg.empty() && seg[0] == '-';
    if (!seg.empty() && (seg[0] == '+' || seg[0] == '-')) seg = seg.substr(1);
    if (seg.empty()) fail(Err::ParseError, "bad element literal '" + raw + "'");
    bool is_eps = false;
    if (seg.size() >= 3 && seg.substr(seg.size() - 3) == "eps") {
      is_eps = true;
      seg = seg.substr(0, seg.size() - 3);
      if (!seg.empty() && seg.back() == '*') seg.pop_back();
      if (seg.empty()) seg = "1";
    }
    mpq_class v = parse_mpq(seg);
    if (negv) v = -v;
    if (is_eps)
      b += v;
    else
      a += v;
  }
  if (!F.quadratic() && b != 0) fail(Err::ParseError, "eps literal over plain Q");
  return F.make(a, b);
}

std::string element_to_string(const FieldRt& f, const Element& e) {
  return f.finite() ? gf_elem_to_string(*f.gf, e.g) : qf_elem_to_string(*f.qf, e.q);
}

Element element_from_string(const FieldPtr& f, const std::string& s) {
  if (f->finite()) return Element{f, gf_elem_from_string(*f->gf, s), {}};
  return Element{f, 0, qf_elem_from_string(*f->qf, s)};
}

}  // namespace orchard
