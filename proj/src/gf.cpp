#include "gp/gf.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

#include "internal.hpp"

namespace gp {

// ---------------------------------------------------------------------------
// u64 number theory

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

static bool mr_witness(u64 n, u64 a, u64 d, int r) {
  u64 x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; i++) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    r++;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (mr_witness(n, a % n, d, r)) return false;
  }
  return true;
}

static u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; c++) {
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

static void factor_rec(u64 n, u64 out[64], int* count) {
  if (n <= 1) return;
  if (is_prime_u64(n)) {
    for (int i = 0; i < *count; i++)
      if (out[i] == n) return;
    out[(*count)++] = n;
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out, count);
  factor_rec(n / d, out, count);
}

void prime_factors_u64(u64 n, u64 out[64], int* count) {
  *count = 0;
  factor_rec(n, out, count);
  std::sort(out, out + *count);
}

// ---------------------------------------------------------------------------
// F_p[t] helpers for modulus selection (residue-vector polynomials)

namespace {

using FpPoly = std::vector<u32>;  // low-to-high, trimmed

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  bool lazy = (u128)(p - 1) * (p - 1) * b.size() < ((u128)1 << 63);
  for (size_t i = 0; i < a.size(); i++) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); j++) {
      acc[i + j] += (u64)a[i] * b[j];
      if (!lazy) acc[i + j] %= p;
    }
  }
  size_t m = f.size() - 1;  // f monic of degree m
  for (size_t i = acc.size(); i-- > m;) {
    u64 c = acc[i] % p;
    if (!c) continue;
    for (size_t j = 0; j < m; j++) {
      u64 nf = (p - f[j] % p) % p;  // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
      acc[i - m + j] = (acc[i - m + j] + mulmod_u64(c, nf, p)) % p;
    }
    acc[i] = 0;
  }
  FpPoly r(m, 0);
  for (size_t j = 0; j < m && j < acc.size(); j++) r[j] = (u32)(acc[j] % p);
  fp_trim(r);
  return r;
}

FpPoly fp_pow_p_of_x(const FpPoly& f, u64 p, u32 times) {
  // x^{p^times} mod f via iterated y <- y^p
  FpPoly y = {0, 1};
  for (u32 t = 0; t < times; t++) {
    FpPoly r = {1};
    FpPoly b = y;
    u64 e = p;
    while (e) {
      if (e & 1) r = fp_mulmod(r, b, f, p);
      b = fp_mulmod(b, b, f, p);
      e >>= 1;
    }
    y = r;
  }
  return y;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    u64 li = powmod_u64(b.back(), p - 2, p);
    while (a.size() >= b.size() && !a.empty()) {
      u64 c = mulmod_u64(a.back(), li, p);
      size_t off = a.size() - b.size();
      for (size_t j = 0; j < b.size(); j++) {
        u64 t = mulmod_u64(c, b[j], p);
        a[off + j] = (u32)((a[off + j] + p - t) % p);
      }
      fp_trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

bool fp_irreducible(const FpPoly& f, u64 p) {
  u32 m = (u32)f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  // Rabin: x^{p^m} == x mod f, and gcd(x^{p^{m/r}} - x, f) = 1 for prime r | m
  FpPoly xq = fp_pow_p_of_x(f, p, m);
  FpPoly x = {0, 1};
  if (xq != x) return false;
  u64 pr[64];
  int cnt;
  prime_factors_u64(m, pr, &cnt);
  for (int i = 0; i < cnt; i++) {
    FpPoly g = fp_pow_p_of_x(f, p, m / (u32)pr[i]);
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (u32)((g[1] + p - 1) % p);
    fp_trim(g);
    FpPoly d = fp_gcd(g, f, p);
    if (d.size() != 1) return false;
  }
  return true;
}

constexpr u32 kMaxStandardDegree = 128;
constexpr u32 kMaxTowerDegree = 4096;
constexpr u64 kTableCap = 1u << 16;

}  // namespace

// ---------------------------------------------------------------------------
// Registry and construction

struct FieldImpl::EmbedData {
  Elem root;                    // image in this field of the subfield generator
  std::vector<SmallVec> basis;  // root^j flattened over F_p, j = 0..d-1
};

struct FieldImpl::Lazy {
  std::recursive_mutex mu;
  std::map<u32, EmbedData> embeds;
};

namespace {

class FieldRegistry {
 public:
  static FieldRegistry& inst() {
    static FieldRegistry* r = new FieldRegistry;  // immortal: Field handles never dangle
    return *r;
  }
  std::mutex mu;
  std::map<std::pair<u64, std::vector<u32>>, FieldImpl*> standard;
  std::map<std::pair<u64, u32>, Field> canonical;
  std::map<std::pair<Field, std::vector<u32>>, FieldImpl*> quotients;
};

}  // namespace

u64 FieldImpl::size_u64() const {
  if (!size_) fail(errc::bounds_exceeded, "field too large for enumeration: " + label());
  return size_;
}

Elem FieldImpl::zero() const {
  Elem e;
  e.f = this;
  e.c.resize_zero(deg_);
  return e;
}

Elem FieldImpl::one() const { return from_int(1); }

Elem FieldImpl::from_int(u64 v) const {
  Elem e = zero();
  e.c[0] = (u32)(v % p_);
  return e;
}

Elem FieldImpl::gen() const {
  Elem e = zero();
  if (base_ == nullptr) {
    if (deg_ > 1) e.c[1] = 1;  // class of t; in F_p the basis is {1} and t = 0
    return e;
  }
  e.c[base_->degree()] = 1;  // class of y
  return e;
}

Elem FieldImpl::from_coeffs(const SmallVec& flat) const {
  if (flat.size() != deg_) fail(errc::invalid_argument, "coefficient length mismatch");
  Elem e;
  e.f = this;
  e.c = flat;
  for (u32 i = 0; i < deg_; i++) e.c[i] = (u32)(e.c[i] % p_);
  return e;
}

Elem FieldImpl::from_base_coeffs(const std::vector<Elem>& cs) const {
  if (base_ == nullptr) fail(errc::invalid_argument, "not a quotient field");
  if (cs.size() > rel_deg_) fail(errc::invalid_argument, "too many base coefficients");
  Elem e = zero();
  u32 bd = base_->degree();
  for (size_t i = 0; i < cs.size(); i++) {
    if (cs[i].f != base_) fail(errc::field_mismatch, "base coefficient from wrong field");
    for (u32 j = 0; j < bd; j++) e.c[(u32)i * bd + j] = cs[i].c[j];
  }
  return e;
}

std::vector<Elem> FieldImpl::base_coeffs(const Elem& x) const {
  if (base_ == nullptr) fail(errc::invalid_argument, "not a quotient field");
  u32 bd = base_->degree();
  std::vector<Elem> out(rel_deg_);
  for (u32 i = 0; i < rel_deg_; i++) {
    Elem b = base_->zero();
    for (u32 j = 0; j < bd; j++) b.c[j] = x.c[i * bd + j];
    out[i] = b;
  }
  return out;
}

bool FieldImpl::is_zero(const Elem& x) const {
  for (u32 i = 0; i < deg_; i++)
    if (x.c[i]) return false;
  return true;
}

bool FieldImpl::is_one(const Elem& x) const {
  if (x.c[0] != 1) return false;
  for (u32 i = 1; i < deg_; i++)
    if (x.c[i]) return false;
  return true;
}

Elem FieldImpl::add(const Elem& a, const Elem& b) const {
  assert(a.f == this && b.f == this);
  Elem r;
  r.f = this;
  r.c.resize_zero(deg_);
  for (u32 i = 0; i < deg_; i++) {
    u64 s = (u64)a.c[i] + b.c[i];
    r.c[i] = (u32)(s >= p_ ? s - p_ : s);
  }
  return r;
}

Elem FieldImpl::sub(const Elem& a, const Elem& b) const {
  assert(a.f == this && b.f == this);
  Elem r;
  r.f = this;
  r.c.resize_zero(deg_);
  for (u32 i = 0; i < deg_; i++) {
    u64 s = (u64)a.c[i] + p_ - b.c[i];
    r.c[i] = (u32)(s >= p_ ? s - p_ : s);
  }
  return r;
}

Elem FieldImpl::neg(const Elem& a) const {
  assert(a.f == this);
  Elem r;
  r.f = this;
  r.c.resize_zero(deg_);
  for (u32 i = 0; i < deg_; i++) r.c[i] = a.c[i] ? (u32)(p_ - a.c[i]) : 0;
  return r;
}

u64 FieldImpl::index_of(const Elem& x) const {
  u64 v = 0;
  for (u32 i = deg_; i-- > 0;) v = v * p_ + x.c[i];
  return v;
}

Elem FieldImpl::of_index(u64 v) const {
  Elem e = zero();
  for (u32 i = 0; i < deg_ && v; i++) {
    e.c[i] = (u32)(v % p_);
    v /= p_;
  }
  return e;
}

Elem FieldImpl::mul(const Elem& a, const Elem& b) const {
  assert(a.f == this && b.f == this);
  if (table_n_) {
    u64 ia = index_of(a), ib = index_of(b);
    if (ia == 0 || ib == 0) return zero();
    u64 e = (u64)log_[ia] + log_[ib];
    if (e >= table_n_) e -= table_n_;
    return of_index(alog_[e]);
  }
  if (base_ == nullptr) {
    std::vector<u64> acc(2 * (size_t)deg_ - 1, 0);
    bool lazy = (u128)(p_ - 1) * (p_ - 1) * deg_ < ((u128)1 << 63);
    for (u32 i = 0; i < deg_; i++) {
      if (!a.c[i]) continue;
      for (u32 j = 0; j < deg_; j++) {
        acc[i + j] += (u64)a.c[i] * b.c[j];
        if (!lazy) acc[i + j] %= p_;
      }
    }
    Elem r = zero();
    for (u32 i = 0; i < deg_; i++) r.c[i] = (u32)(acc[i] % p_);
    for (u32 i = deg_; i < 2 * deg_ - 1; i++) {
      u64 c = acc[i] % p_;
      if (!c) continue;
      const SmallVec& row = red_[i - deg_];
      for (u32 j = 0; j < deg_; j++) {
        if (!row[j]) continue;
        r.c[j] = (u32)((r.c[j] + mulmod_u64(c, row[j], p_)) % p_);
      }
    }
    return r;
  }
  // quotient: schoolbook over base, then reduction rows over base
  u32 k = rel_deg_;
  std::vector<Elem> av = base_coeffs(a), bv = base_coeffs(b);
  std::vector<Elem> acc(2 * (size_t)k - 1, base_->zero());
  for (u32 i = 0; i < k; i++) {
    if (base_->is_zero(av[i])) continue;
    for (u32 j = 0; j < k; j++) {
      if (base_->is_zero(bv[j])) continue;
      acc[i + j] = base_->add(acc[i + j], base_->mul(av[i], bv[j]));
    }
  }
  for (u32 i = 2 * k - 1; i-- > k;) {
    if (base_->is_zero(acc[i])) continue;
    const std::vector<Elem>& row = rel_red_[i - k];
    for (u32 j = 0; j < k; j++) {
      if (base_->is_zero(row[j])) continue;
      acc[i - k + j] = base_->add(acc[i - k + j], base_->mul(acc[i], row[j]));
    }
  }
  acc.resize(k);
  return from_base_coeffs(acc);
}

Elem FieldImpl::pow(const Elem& a, u128 e) const {
  if (table_n_) {
    u64 ia = index_of(a);
    if (ia == 0) return e == 0 ? one() : zero();
    u64 ee = (u64)(e % table_n_);
    u64 le = mulmod_u64(log_[ia], ee, table_n_);
    return of_index(alog_[le]);
  }
  Elem r = one();
  Elem b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elem FieldImpl::pow_p(const Elem& a, u32 k) const {
  Elem r = a;
  for (u32 i = 0; i < k; i++) r = pow(r, p_);
  return r;
}

Elem FieldImpl::inv(const Elem& a) const {
  if (is_zero(a)) fail(errc::invalid_argument, "inverse of zero");
  if (table_n_) {
    u64 ia = index_of(a);
    u64 e = (table_n_ - log_[ia]) % table_n_;
    return of_index(alog_[e]);
  }
  if (base_ == nullptr) {
    if (deg_ == 1) {
      Elem r = zero();
      r.c[0] = (u32)powmod_u64(a.c[0], p_ - 2, p_);
      return r;
    }
    FpPoly r0(mod_.begin(), mod_.end());
    FpPoly r1(a.c.data(), a.c.data() + deg_);
    fp_trim(r1);
    FpPoly s0 = {}, s1 = {1};
    while (!r1.empty()) {
      u64 li = powmod_u64(r1.back(), p_ - 2, p_);
      FpPoly rem = r0;
      FpPoly q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, 0);
      while (rem.size() >= r1.size() && !rem.empty()) {
        u64 c = mulmod_u64(rem.back(), li, p_);
        size_t off = rem.size() - r1.size();
        q[off] = (u32)c;
        for (size_t j = 0; j < r1.size(); j++) {
          u64 t = mulmod_u64(c, r1[j], p_);
          rem[off + j] = (u32)((rem[off + j] + p_ - t) % p_);
        }
        fp_trim(rem);
      }
      fp_trim(q);
      FpPoly qs;
      if (!q.empty() && !s1.empty()) {
        qs.assign(q.size() + s1.size() - 1, 0);
        for (size_t i = 0; i < q.size(); i++) {
          if (!q[i]) continue;
          for (size_t j = 0; j < s1.size(); j++)
            qs[i + j] = (u32)((qs[i + j] + mulmod_u64(q[i], s1[j], p_)) % p_);
        }
      }
      FpPoly ns = s0;
      if (ns.size() < qs.size()) ns.resize(qs.size(), 0);
      for (size_t j = 0; j < qs.size(); j++) ns[j] = (u32)((ns[j] + p_ - qs[j]) % p_);
      fp_trim(ns);
      s0 = s1;
      s1 = ns;
      r0 = r1;
      r1 = rem;
    }
    if (r0.size() != 1) fail(errc::internal, "non-invertible element (zero divisor)");
    u64 ci = powmod_u64(r0[0], p_ - 2, p_);
    Elem r = zero();
    for (size_t j = 0; j < s0.size(); j++) r.c[j] = (u32)mulmod_u64(s0[j], ci, p_);
    return r;
  }
  // quotient: extended Euclid in base[y] against rel_mod_
  auto trim = [&](std::vector<Elem>& v) {
    while (!v.empty() && base_->is_zero(v.back())) v.pop_back();
  };
  std::vector<Elem> r0 = rel_mod_;
  std::vector<Elem> r1 = base_coeffs(a);
  trim(r1);
  std::vector<Elem> s0, s1 = {base_->one()};
  while (!r1.empty()) {
    Elem li = base_->inv(r1.back());
    std::vector<Elem> rem = r0;
    std::vector<Elem> q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, base_->zero());
    while (rem.size() >= r1.size() && !rem.empty()) {
      Elem c = base_->mul(rem.back(), li);
      size_t off = rem.size() - r1.size();
      q[off] = c;
      for (size_t j = 0; j < r1.size(); j++)
        rem[off + j] = base_->sub(rem[off + j], base_->mul(c, r1[j]));
      trim(rem);
    }
    trim(q);
    std::vector<Elem> qs;
    if (!q.empty() && !s1.empty()) {
      qs.assign(q.size() + s1.size() - 1, base_->zero());
      for (size_t i = 0; i < q.size(); i++) {
        if (base_->is_zero(q[i])) continue;
        for (size_t j = 0; j < s1.size(); j++)
          qs[i + j] = base_->add(qs[i + j], base_->mul(q[i], s1[j]));
      }
    }
    std::vector<Elem> ns = s0;
    if (ns.size() < qs.size()) ns.resize(qs.size(), base_->zero());
    for (size_t j = 0; j < qs.size(); j++) ns[j] = base_->sub(ns[j], qs[j]);
    trim(ns);
    s0 = std::move(s1);
    s1 = std::move(ns);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  if (r0.size() != 1)
    fail(errc::internal, "non-invertible element in quotient field (reducible modulus)");
  Elem ci = base_->inv(r0[0]);
  std::vector<Elem> out(s0.size(), base_->zero());
  for (size_t j = 0; j < s0.size(); j++) out[j] = base_->mul(s0[j], ci);
  return from_base_coeffs(out);
}

std::string FieldImpl::to_string(const Elem& x) const {
  if (base_ != nullptr) {
    std::vector<Elem> cs = base_coeffs(x);
    std::string s = "[";
    for (u32 i = 0; i < rel_deg_; i++) {
      if (i) s += ",";
      s += base_->to_string(cs[i]);
    }
    return s + "]";
  }
  if (deg_ == 1) return std::to_string(x.c[0]);
  std::string s;
  for (u32 i = deg_; i-- > 0;) {
    u32 c = x.c[i];
    if (!c) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c) + "*";
      s += "w";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

std::string FieldImpl::label() const {
  if (base_ != nullptr) return base_->label() + "[y]/" + std::to_string(rel_deg_);
  if (deg_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(deg_);
}

int cmp(const Elem& a, const Elem& b) {
  assert(a.f == b.f);
  for (u32 i = a.c.size(); i-- > 0;) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
  }
  return 0;
}

struct FieldBuilder {
  static FieldImpl* standard(u64 p, const std::vector<u32>& modulus);
  static FieldImpl* quotient(Field base, const std::vector<Elem>& monic_mod);
};

FieldImpl* FieldBuilder::standard(u64 p, const std::vector<u32>& modulus) {
  auto* F = new FieldImpl();
  F->p_ = p;
  F->deg_ = (u32)modulus.size() - 1;
  F->rel_deg_ = F->deg_;
  F->base_ = nullptr;
  F->mod_ = modulus;
  F->size_ = 0;
  {
    u128 s = 1;
    bool fits = true;
    for (u32 i = 0; i < F->deg_; i++) {
      s *= p;
      if (s >= ((u128)1 << 63)) {
        fits = false;
        break;
      }
    }
    if (fits) F->size_ = (u64)s;
  }
  u32 m = F->deg_;
  if (m > 1) {
    F->red_.resize(m - 1);
    SmallVec row(m);
    for (u32 j = 0; j < m; j++) row[j] = (u32)((p - modulus[j] % p) % p);
    F->red_[0] = row;
    for (u32 i = 1; i < m - 1; i++) {
      SmallVec nxt(m);
      u32 top = row[m - 1];
      for (u32 j = m - 1; j >= 1; j--) nxt[j] = row[j - 1];
      nxt[0] = 0;
      if (top) {
        for (u32 j = 0; j < m; j++)
          nxt[j] = (u32)((nxt[j] + mulmod_u64(top, F->red_[0][j], p)) % p);
      }
      F->red_[i] = nxt;
      row = nxt;
    }
  }
  F->lazy_ = new FieldImpl::Lazy();

  if (F->size_ && F->size_ <= kTableCap) {
    u64 n = F->size_ - 1;
    if (n >= 1) {
      u64 pr[64];
      int cnt;
      prime_factors_u64(n, pr, &cnt);
      Elem g;
      bool found = false;
      for (u64 idx = 1; idx < F->size_ && !found; idx++) {
        g = F->of_index(idx);
        if (F->is_zero(g)) continue;
        bool prim = true;
        for (int i = 0; i < cnt && prim; i++)
          if (F->is_one(F->pow(g, n / pr[i]))) prim = false;
        if (prim) found = true;
      }
      if (found) {
        F->alog_.assign(n, 0);
        F->log_.assign(F->size_, 0);
        Elem cur = F->one();
        for (u64 e = 0; e < n; e++) {
          u64 ci = F->index_of(cur);
          F->alog_[e] = (u32)ci;
          F->log_[ci] = (u32)e;
          cur = F->mul(cur, g);
        }
        F->table_n_ = n;
      }
    }
  }
  return F;
}

Field gf_with_modulus(u64 p, const std::vector<u32>& modulus) {
  if (!is_prime_u64(p)) fail(errc::invalid_argument, "characteristic must be prime");
  if (p >= (1ULL << 31)) fail(errc::bounds_exceeded, "characteristic beyond machine bounds");
  if (modulus.size() < 2) fail(errc::invalid_argument, "modulus must have degree >= 1");
  if (modulus.size() - 1 > kMaxStandardDegree)
    fail(errc::bounds_exceeded, "field degree beyond machine bounds");
  std::vector<u32> m = modulus;
  for (auto& c : m) c = (u32)(c % p);
  if (m.back() != 1) fail(errc::invalid_argument, "modulus must be monic");
  FpPoly f(m.begin(), m.end());
  if (!fp_irreducible(f, p)) fail(errc::invalid_argument, "modulus is reducible over F_p");

  auto& reg = FieldRegistry::inst();
  std::lock_guard<std::mutex> lk(reg.mu);
  auto key = std::make_pair(p, m);
  auto it = reg.standard.find(key);
  if (it != reg.standard.end()) return it->second;
  FieldImpl* F = FieldBuilder::standard(p, m);
  reg.standard.emplace(key, F);
  return F;
}

Field gf(u64 p, u32 m) {
  if (!is_prime_u64(p)) fail(errc::invalid_argument, "characteristic must be prime");
  if (m == 0) fail(errc::invalid_argument, "extension degree must be positive");
  if (m > kMaxStandardDegree) fail(errc::bounds_exceeded, "field degree beyond machine bounds");
  {
    auto& reg = FieldRegistry::inst();
    std::lock_guard<std::mutex> lk(reg.mu);
    auto it = reg.canonical.find({p, m});
    if (it != reg.canonical.end()) return it->second;
  }
  std::vector<u32> mod;
  if (m == 1) {
    mod = {0, 1};  // t
  } else {
    bool found = false;
    for (u64 idx = 0; idx < (1ULL << 26) && !found; idx++) {
      FpPoly f(m + 1, 0);
      u64 v = idx;
      for (u32 i = 0; i < m && v; i++) {
        f[i] = (u32)(v % p);
        v /= p;
      }
      if (v) break;  // exhausted p^m candidates (tiny fields only)
      f[m] = 1;
      if (fp_irreducible(f, p)) {
        mod.assign(f.begin(), f.end());
        found = true;
      }
    }
    if (!found) fail(errc::internal, "no irreducible modulus found in search range");
  }
  Field F = gf_with_modulus(p, mod);
  auto& reg = FieldRegistry::inst();
  std::lock_guard<std::mutex> lk(reg.mu);
  reg.canonical.emplace(std::make_pair(p, m), F);
  return F;
}

Field quotient_field(Field base, const std::vector<Elem>& monic_mod) {
  if (monic_mod.size() < 2) fail(errc::invalid_argument, "quotient modulus must have degree >= 1");
  for (const Elem& c : monic_mod)
    if (c.f != base) fail(errc::field_mismatch, "modulus coefficients must lie in the base field");
  if (!base->is_one(monic_mod.back()))
    fail(errc::invalid_argument, "quotient modulus must be monic");
  u32 k = (u32)monic_mod.size() - 1;
  if ((u64)k * base->degree() > kMaxTowerDegree)
    fail(errc::bounds_exceeded, "tower degree beyond machine bounds");

  std::vector<u32> key;
  for (const Elem& c : monic_mod)
    for (u32 j = 0; j < base->degree(); j++) key.push_back(c.c[j]);

  auto& reg = FieldRegistry::inst();
  std::lock_guard<std::mutex> lk(reg.mu);
  auto it = reg.quotients.find({base, key});
  if (it != reg.quotients.end()) return it->second;

  FieldImpl* F = FieldBuilder::quotient(base, monic_mod);
  reg.quotients.emplace(std::make_pair(base, key), F);
  return F;
}

FieldImpl* FieldBuilder::quotient(Field base, const std::vector<Elem>& monic_mod) {
  u32 k = (u32)monic_mod.size() - 1;
  auto* F = new FieldImpl();
  F->p_ = base->p();
  F->base_ = base;
  F->rel_deg_ = k;
  F->deg_ = k * base->degree();
  F->rel_mod_ = monic_mod;
  F->size_ = 0;
  {
    u128 s = 1;
    bool fits = true;
    for (u32 i = 0; i < F->deg_; i++) {
      s *= F->p_;
      if (s >= ((u128)1 << 63)) {
        fits = false;
        break;
      }
    }
    if (fits) F->size_ = (u64)s;
  }
  if (k > 1) {
    F->rel_red_.resize(k - 1);
    std::vector<Elem> row(k);
    for (u32 j = 0; j < k; j++) row[j] = base->neg(monic_mod[j]);
    F->rel_red_[0] = row;
    for (u32 i = 1; i < k - 1; i++) {
      std::vector<Elem> nxt(k, base->zero());
      Elem top = row[k - 1];
      for (u32 j = k - 1; j >= 1; j--) nxt[j] = row[j - 1];
      nxt[0] = base->zero();
      if (!base->is_zero(top)) {
        for (u32 j = 0; j < k; j++) nxt[j] = base->add(nxt[j], base->mul(top, F->rel_red_[0][j]));
      }
      F->rel_red_[i] = nxt;
      row = nxt;
    }
  }
  F->lazy_ = new FieldImpl::Lazy();
  return F;
}

// ---------------------------------------------------------------------------
// Embeddings
//
// Roots of subfield moduli are chosen coherently: when building the data for
// degree d inside F_{p^n}, the candidate root must map each already-chosen
// divisor root r_{e,d} (an element of F_{p^d}) onto r_{e,n}. Processing
// divisors in increasing order makes every chain m | k | n commute, which is
// exactly the compatibility the tower contract requires.

const FieldImpl::EmbedData& FieldImpl::embed_data(u32 d) const {
  std::lock_guard<std::recursive_mutex> lk(lazy_->mu);
  auto it = lazy_->embeds.find(d);
  if (it != lazy_->embeds.end()) return it->second;

  Field sub = gf(p_, d);
  std::vector<Elem> lifted;
  for (u32 c : sub->modulus()) lifted.push_back(from_int(c));
  std::vector<Elem> cands = detail::roots_in_field(lifted, this);
  std::sort(cands.begin(), cands.end(), ElemLess{});

  std::vector<u32> props;
  for (u32 e = 1; e < d; e++)
    if (d % e == 0) props.push_back(e);

  const Elem* chosen = nullptr;
  for (const Elem& cand : cands) {
    bool ok = true;
    for (u32 e : props) {
      Elem r_ed = sub->embed_data(e).root;  // element of sub
      // evaluate its polynomial form at cand, in this field
      Elem val = zero();
      Elem cp = one();
      for (u32 j = 0; j < d; j++) {
        if (r_ed.c[j]) val = add(val, mul(cp, from_int(r_ed.c[j])));
        if (j + 1 < d) cp = mul(cp, cand);
      }
      Elem want = embed_data(e).root;
      if (!(val == want)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      chosen = &cand;
      break;
    }
  }
  if (!chosen) fail(errc::internal, "no coherent embedding root found");

  EmbedData data;
  data.root = *chosen;
  data.basis.resize(d);
  Elem cp = one();
  for (u32 j = 0; j < d; j++) {
    data.basis[j] = cp.c;
    if (j + 1 < d) cp = mul(cp, *chosen);
  }
  auto [it2, inserted] = lazy_->embeds.emplace(d, std::move(data));
  (void)inserted;
  return it2->second;
}

Elem embed(const Elem& x, Field target) {
  if (x.f == target) return x;
  Field src = x.f;
  if (!src->is_standard() || !target->is_standard())
    fail(errc::field_mismatch, "embed requires standard fields");
  if (src->p() != target->p()) fail(errc::field_mismatch, "characteristic mismatch");
  if (target->degree() % src->degree() != 0)
    fail(errc::field_mismatch, "source degree does not divide target degree");
  if (src != gf(src->p(), src->degree()))
    fail(errc::field_mismatch, "embed requires the canonical field model (normalize first)");
  const auto& data = target->embed_data(src->degree());
  Elem r = target->zero();
  u64 p = target->p();
  for (u32 j = 0; j < src->degree(); j++) {
    u32 cj = x.c[j];
    if (!cj) continue;
    const SmallVec& col = data.basis[j];
    for (u32 i = 0; i < target->degree(); i++) {
      if (!col[i]) continue;
      r.c[i] = (u32)((r.c[i] + mulmod_u64(cj, col[i], p)) % p);
    }
  }
  return r;
}

std::optional<Elem> try_project(const Elem& x, Field sub) {
  Field src = x.f;
  if (src == sub) return x;
  if (!src->is_standard() || !sub->is_standard())
    fail(errc::field_mismatch, "project requires standard fields");
  if (src->p() != sub->p()) fail(errc::field_mismatch, "characteristic mismatch");
  u32 d = sub->degree(), n = src->degree();
  if (n % d != 0) fail(errc::field_mismatch, "subfield degree does not divide field degree");
  if (sub != gf(sub->p(), d))
    fail(errc::field_mismatch, "project requires the canonical field model");
  const auto& data = src->embed_data(d);
  u64 p = src->p();
  std::vector<std::vector<u64>> m(n, std::vector<u64>(d + 1, 0));
  for (u32 i = 0; i < n; i++) {
    for (u32 j = 0; j < d; j++) m[i][j] = data.basis[j][i];
    m[i][d] = x.c[i];
  }
  u32 row = 0;
  std::vector<int> pivot_of_col(d, -1);
  for (u32 col = 0; col < d && row < n; col++) {
    u32 sel = row;
    while (sel < n && m[sel][col] == 0) sel++;
    if (sel == n) continue;
    std::swap(m[sel], m[row]);
    u64 iv = powmod_u64(m[row][col], p - 2, p);
    for (u32 j = col; j <= d; j++) m[row][j] = mulmod_u64(m[row][j], iv, p);
    for (u32 i = 0; i < n; i++) {
      if (i == row || m[i][col] == 0) continue;
      u64 fct = m[i][col];
      for (u32 j = col; j <= d; j++)
        m[i][j] = (m[i][j] + p - mulmod_u64(fct, m[row][j], p)) % p;
    }
    pivot_of_col[col] = (int)row;
    row++;
  }
  for (u32 i = row; i < n; i++)
    if (m[i][d] != 0) return std::nullopt;
  Elem y = sub->zero();
  for (u32 col = 0; col < d; col++)
    if (pivot_of_col[col] >= 0) y.c[col] = (u32)m[pivot_of_col[col]][d];
  if (!(embed(y, src) == x)) return std::nullopt;
  return y;
}

u32 element_degree(const Elem& x) {
  Field f = x.f;
  u32 n = f->degree();
  for (u32 d = 1; d <= n; d++) {
    if (n % d) continue;
    if (f->pow_p(x, d) == x) return d;
  }
  fail(errc::internal, "element degree not found");
}

u64 element_order(const Elem& x) {
  Field f = x.f;
  if (f->is_zero(x)) fail(errc::invalid_argument, "order of zero");
  u64 n = f->size_u64() - 1;
  if (n == 0) return 1;
  u64 pr[64];
  int cnt;
  prime_factors_u64(n, pr, &cnt);
  u64 ord = n;
  for (int i = 0; i < cnt; i++) {
    while (ord % pr[i] == 0 && f->is_one(f->pow(x, ord / pr[i]))) ord /= pr[i];
  }
  return ord;
}

std::vector<Elem> roots_of_unity(Field f, u64 l) {
  if (l == 0) fail(errc::invalid_argument, "l must be positive");
  if (l % f->p() == 0) fail(errc::invalid_argument, "l divisible by the characteristic");
  u64 n = f->size_u64() - 1;
  u64 g0 = n ? gcd_u64(l, n) : 1;
  std::vector<Elem> out;
  if (g0 == 1) {
    out.push_back(f->one());
    return out;
  }
  Elem zeta;
  bool found = false;
  for (u64 idx = 1; idx < f->size_u64() && !found; idx++) {
    Elem y = f->of_index(idx);
    if (f->is_zero(y)) continue;
    Elem z = f->pow(y, n / g0);
    if (element_order(z) == g0) {
      zeta = z;
      found = true;
    }
  }
  if (!found) fail(errc::internal, "no root of unity generator found");
  Elem cur = f->one();
  for (u64 i = 0; i < g0; i++) {
    out.push_back(cur);
    cur = f->mul(cur, zeta);
  }
  std::sort(out.begin(), out.end(), ElemLess{});
  return out;
}

Elem least_primitive_element(Field f) {
  u64 n = f->size_u64() - 1;
  if (n == 0) return f->one();
  u64 pr[64];
  int cnt;
  prime_factors_u64(n, pr, &cnt);
  for (u64 idx = 1; idx < f->size_u64(); idx++) {
    Elem g = f->of_index(idx);
    if (f->is_zero(g)) continue;
    bool prim = true;
    for (int i = 0; i < cnt && prim; i++)
      if (f->is_one(f->pow(g, n / pr[i]))) prim = false;
    if (prim) return g;
  }
  fail(errc::internal, "no primitive element found");
}

}  // namespace gp
