#include "gp/poly.hpp"

#include <algorithm>
#include <cassert>

#include "internal.hpp"

namespace gp {

// ---------------------------------------------------------------------------
// UPoly

UPoly UPoly::var(Field k) {
  UPoly r(k);
  r.c_ = {k->zero(), k->one()};
  return r;
}

UPoly UPoly::constant(const Elem& c) {
  UPoly r(c.f);
  if (!c.f->is_zero(c)) r.c_ = {c};
  return r;
}

Elem UPoly::lead() const {
  if (c_.empty()) return k_->zero();
  return c_.back();
}

void UPoly::set_coeff(u32 i, const Elem& v) {
  if (i >= c_.size()) {
    if (k_->is_zero(v)) return;
    c_.resize(i + 1, k_->zero());
  }
  c_[i] = v;
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && k_->is_zero(c_.back())) c_.pop_back();
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  Field k = a.field();
  std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()), k->zero());
  for (size_t i = 0; i < c.size(); i++) c[i] = k->add(a.coeff((u32)i), b.coeff((u32)i));
  return UPoly(k, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  Field k = a.field();
  std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()), k->zero());
  for (size_t i = 0; i < c.size(); i++) c[i] = k->sub(a.coeff((u32)i), b.coeff((u32)i));
  return UPoly(k, std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  Field k = a.field();
  if (a.is_zero() || b.is_zero()) return UPoly(k);
  std::vector<Elem> c(a.coeffs().size() + b.coeffs().size() - 1, k->zero());
  for (size_t i = 0; i < a.coeffs().size(); i++) {
    const Elem& ai = a.coeffs()[i];
    if (k->is_zero(ai)) continue;
    for (size_t j = 0; j < b.coeffs().size(); j++) {
      const Elem& bj = b.coeffs()[j];
      if (k->is_zero(bj)) continue;
      c[i + j] = k->add(c[i + j], k->mul(ai, bj));
    }
  }
  return UPoly(k, std::move(c));
}

UPoly operator*(const Elem& s, const UPoly& a) {
  Field k = a.field();
  if (k->is_zero(s)) return UPoly(k);
  std::vector<Elem> c(a.coeffs());
  for (auto& ci : c) ci = k->mul(s, ci);
  return UPoly(k, std::move(c));
}

UPoly monic(const UPoly& a) {
  if (a.is_zero()) return a;
  Field k = a.field();
  if (k->is_one(a.lead())) return a;
  return k->inv(a.lead()) * a;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  Field k = a.field();
  if (b.is_zero()) fail(errc::invalid_argument, "division by zero polynomial");
  if (a.deg() < b.deg()) return {UPoly(k), a};
  Elem li = k->inv(b.lead());
  std::vector<Elem> rem = a.coeffs();
  std::vector<Elem> q((size_t)(a.deg() - b.deg() + 1), k->zero());
  for (int i = a.deg(); i >= b.deg(); i--) {
    Elem c = k->mul(rem[(size_t)i], li);
    if (k->is_zero(c)) continue;
    q[(size_t)(i - b.deg())] = c;
    for (int j = 0; j <= b.deg(); j++) {
      rem[(size_t)(i - b.deg() + j)] =
          k->sub(rem[(size_t)(i - b.deg() + j)], k->mul(c, b.coeffs()[(size_t)j]));
    }
  }
  return {UPoly(k, std::move(q)), UPoly(k, std::move(rem))};
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  if (a.field() != b.field()) fail(errc::field_mismatch, "gcd over different fields");
  UPoly x = a, y = b;
  if (x.is_zero() && y.is_zero()) fail(errc::invalid_argument, "gcd(0, 0)");
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return monic(x);
}

Elem eval(const UPoly& f, const Elem& x) {
  Field k = f.field();
  Elem r = k->zero();
  for (int i = f.deg(); i >= 0; i--) r = k->add(k->mul(r, x), f.coeffs()[(size_t)i]);
  return r;
}

UPoly derivative(const UPoly& f) {
  Field k = f.field();
  if (f.deg() < 1) return UPoly(k);
  std::vector<Elem> c((size_t)f.deg(), k->zero());
  for (int i = 1; i <= f.deg(); i++)
    c[(size_t)(i - 1)] = k->mul(k->from_int((u64)i), f.coeffs()[(size_t)i]);
  return UPoly(k, std::move(c));
}

UPoly pow_mod(const UPoly& g, u128 e, const UPoly& f) {
  Field k = g.field();
  UPoly r = UPoly::constant(k->one());
  UPoly b = divmod(g, f).second;
  while (e) {
    if (e & 1) r = divmod(r * b, f).second;
    b = divmod(b * b, f).second;
    e >>= 1;
  }
  return r;
}

UPoly pow_p_mod(const UPoly& g, u32 times, const UPoly& f) {
  UPoly y = divmod(g, f).second;
  u64 p = g.field()->p();
  for (u32 t = 0; t < times; t++) y = pow_mod(y, p, f);
  return y;
}

UPoly compose_shift(const UPoly& f, const Elem& a) {
  Field k = f.field();
  UPoly xa(k, {a, k->one()});
  UPoly r(k);
  for (int i = f.deg(); i >= 0; i--) {
    r = r * xa;
    r = r + UPoly::constant(f.coeffs()[(size_t)i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// squarefree / factoring

static UPoly pth_root_poly(const UPoly& f) {
  Field k = f.field();
  u64 p = k->p();
  u32 n = k->degree();
  std::vector<Elem> c((size_t)(f.deg() / (int)p) + 1, k->zero());
  for (int i = 0; i <= f.deg(); i++) {
    if (k->is_zero(f.coeffs()[(size_t)i])) continue;
    if ((u64)i % p != 0) fail(errc::internal, "pth_root of non-p-power polynomial");
    // a^(1/p) = a^(p^(n-1)) in a field of p^n elements
    c[(size_t)i / p] = k->pow_p(f.coeffs()[(size_t)i], n ? n - 1 : 0);
  }
  return UPoly(k, std::move(c));
}

UPoly squarefree_part(const UPoly& f) {
  Field k = f.field();
  if (f.is_zero()) fail(errc::invalid_argument, "squarefree part of zero");
  if (f.deg() == 0) return UPoly::constant(k->one());
  UPoly d = derivative(f);
  if (d.is_zero()) return squarefree_part(pth_root_poly(monic(f)));
  UPoly g = upoly_gcd(f, d);
  UPoly h = divmod(f, g).first;  // distinct factors of non-p multiplicity
  // strip every h-factor from g; what remains has all multiplicities
  // divisible by p, i.e. is literally a p-th power
  UPoly rest = g;
  while (true) {
    if (rest.deg() == 0) break;
    UPoly c = upoly_gcd(rest, h);
    if (c.deg() == 0) break;
    rest = divmod(rest, c).first;
  }
  if (rest.deg() == 0) return monic(h);
  UPoly tail = squarefree_part(rest);
  // h and tail can share factors (multiplicity e with p | e and also e' != 0
  // appearing separately never happens for the same irreducible, but divide
  // defensively to keep the radical squarefree)
  UPoly c = upoly_gcd(tail, h);
  if (c.deg() > 0) tail = divmod(tail, c).first;
  return monic(h * tail);
}

// Distinct-degree components of a monic squarefree polynomial.
static std::vector<std::pair<u32, UPoly>> ddf_components(const UPoly& fin) {
  Field k = fin.field();
  std::vector<std::pair<u32, UPoly>> out;
  UPoly rem = monic(fin);
  if (rem.deg() <= 0) return out;
  UPoly x = UPoly::var(k);
  UPoly w = divmod(x, rem).second;
  u32 kk = 1;
  while (rem.deg() >= (int)(2 * kk)) {
    w = pow_p_mod(w, k->degree(), rem);  // w^(q), q = p^deg
    UPoly g = upoly_gcd(w - x, rem);
    if (g.deg() > 0) {
      out.push_back({kk, g});
      rem = divmod(rem, g).first;
      w = divmod(w, rem).second;
    }
    kk++;
  }
  if (rem.deg() > 0) out.push_back({(u32)rem.deg(), rem});
  return out;
}

std::map<u32, u32> distinct_degree_profile(const UPoly& f) {
  if (f.is_zero()) fail(errc::invalid_argument, "profile of zero polynomial");
  std::map<u32, u32> prof;
  for (auto& [d, g] : ddf_components(squarefree_part(f))) prof[d] = (u32)g.deg() / d;
  return prof;
}

static u64 poly_hash(const UPoly& f) {
  u64 h = mix64(f.field()->p() ^ ((u64)f.field()->degree() << 32));
  for (const Elem& c : f.coeffs())
    for (u32 i = 0; i < c.c.size(); i++) h = mix64(h ^ c.c[i] ^ ((u64)i << 40));
  return h;
}

// Equal-degree splitting of a monic squarefree product of degree-d irreducibles.
static void edf_split(const UPoly& f, u32 d, std::vector<UPoly>& out) {
  Field k = f.field();
  if (f.deg() <= 0) return;
  if ((u32)f.deg() == d) {
    out.push_back(monic(f));
    return;
  }
  u64 p = k->p();
  u32 steps = k->degree() * d;  // total F_p-degree of the factor fields
  Rng rng(poly_hash(f) ^ mix64(d));
  for (int attempt = 0; attempt < 512; attempt++) {
    std::vector<Elem> tc((size_t)f.deg(), k->zero());
    for (auto& e : tc) {
      SmallVec v(k->degree());
      for (u32 i = 0; i < k->degree(); i++) v[i] = (u32)rng.below(p);
      e = k->from_coeffs(v);
    }
    UPoly t(k, std::move(tc));
    if (t.is_zero()) continue;
    UPoly u(k);
    if (p == 2) {
      // trace polynomial t + t^2 + t^4 + ... over F_2
      UPoly s = divmod(t, f).second;
      u = s;
      for (u32 i = 1; i < steps; i++) {
        s = divmod(s * s, f).second;
        u = u + s;
      }
    } else {
      // norm to F_p then Legendre: t^((p^steps-1)/2) = N(t)^((p-1)/2)
      UPoly s = divmod(t, f).second;
      UPoly n = s;
      for (u32 i = 1; i < steps; i++) {
        s = pow_mod(s, p, f);
        n = divmod(n * s, f).second;
      }
      u = pow_mod(n, (p - 1) / 2, f) - UPoly::constant(k->one());
    }
    if (u.is_zero()) continue;
    UPoly g = upoly_gcd(u, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf_split(g, d, out);
      edf_split(divmod(f, g).first, d, out);
      return;
    }
  }
  fail(errc::internal, "equal-degree splitting did not converge");
}

std::vector<UPoly> irreducible_factors(const UPoly& f) {
  std::vector<UPoly> out;
  UPoly rad = squarefree_part(f);
  for (auto& [d, comp] : ddf_components(rad)) edf_split(comp, d, out);
  std::sort(out.begin(), out.end(), [](const UPoly& a, const UPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = a.deg(); i >= 0; i--) {
      int c = cmp(a.coeffs()[(size_t)i], b.coeffs()[(size_t)i]);
      if (c) return c < 0;
    }
    return false;
  });
  return out;
}

std::vector<Elem> roots_in(const UPoly& f) {
  Field k = f.field();
  if (f.is_zero()) fail(errc::invalid_argument, "roots of zero polynomial");
  std::vector<Elem> out;
  if (f.deg() == 0) return out;
  UPoly rad = squarefree_part(f);
  // product of the linear factors: gcd(x^q - x, rad)
  UPoly x = UPoly::var(k);
  UPoly w = pow_p_mod(x, k->degree(), rad);
  UPoly lin = upoly_gcd(w - x, rad);
  if (lin.deg() <= 0) return out;
  std::vector<UPoly> fac;
  edf_split(lin, 1, fac);
  for (const UPoly& l : fac) out.push_back(k->neg(l.coeffs()[0]));
  std::sort(out.begin(), out.end(), ElemLess{});
  return out;
}

std::vector<std::pair<Elem, u32>> roots_with_multiplicity(const UPoly& f) {
  std::vector<std::pair<Elem, u32>> out;
  Field k = f.field();
  for (const Elem& r : roots_in(f)) {
    UPoly lin(k, {k->neg(r), k->one()});
    UPoly g = f;
    u32 m = 0;
    while (true) {
      auto [q, rem] = divmod(g, lin);
      if (!rem.is_zero()) break;
      m++;
      g = q;
    }
    out.push_back({r, m});
  }
  return out;
}

UPoly map_coeffs(const UPoly& f, Field target) {
  std::vector<Elem> c;
  c.reserve(f.coeffs().size());
  for (const Elem& e : f.coeffs()) c.push_back(embed(e, target));
  return UPoly(target, std::move(c));
}

std::vector<Elem> roots_over(const UPoly& f, Field target) {
  if (f.is_zero()) fail(errc::invalid_argument, "roots of zero polynomial");
  return roots_in(map_coeffs(f, target));
}

namespace detail {
std::vector<Elem> roots_in_field(const std::vector<Elem>& coeffs, Field f) {
  return roots_in(UPoly(f, coeffs));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// BiPoly

int BiPoly::deg_y() const {
  int d = -1;
  for (const UPoly& c : cx_) d = std::max(d, c.deg());
  return d;
}

void BiPoly::set_coeff_x(u32 i, const UPoly& c) {
  if (i >= cx_.size()) {
    if (c.is_zero()) return;
    cx_.resize(i + 1, UPoly(k_));
  }
  cx_[i] = c;
  trim();
}

void BiPoly::trim() {
  while (!cx_.empty() && cx_.back().is_zero()) cx_.pop_back();
}

UPoly BiPoly::eval_y(const Elem& v) const {
  std::vector<Elem> c;
  c.reserve(cx_.size());
  for (const UPoly& ci : cx_) c.push_back(gp::eval(ci, v));
  return UPoly(k_, std::move(c));
}

UPoly BiPoly::eval_x(const Elem& v) const {
  UPoly r(k_);
  for (size_t i = cx_.size(); i-- > 0;) {
    r = UPoly::constant(v) * r + cx_[i];
  }
  return r;
}

Elem BiPoly::eval(const Elem& x, const Elem& y) const {
  Elem r = k_->zero();
  for (size_t i = cx_.size(); i-- > 0;) r = k_->add(k_->mul(r, x), gp::eval(cx_[i], y));
  return r;
}

BiPoly BiPoly::swap_vars() const {
  BiPoly r(k_);
  for (u32 i = 0; i < cx_.size(); i++) {
    for (int j = 0; j <= cx_[i].deg(); j++) {
      Elem c = cx_[i].coeffs()[(size_t)j];
      if (k_->is_zero(c)) continue;
      UPoly cur = r.coeff_x((u32)j);
      cur.set_coeff(i, k_->add(cur.coeff(i), c));
      r.set_coeff_x((u32)j, cur);
    }
  }
  return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  BiPoly r(a.field());
  u32 n = (u32)std::max(a.coeffs_x().size(), b.coeffs_x().size());
  for (u32 i = 0; i < n; i++) r.set_coeff_x(i, a.coeff_x(i) + b.coeff_x(i));
  return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  BiPoly r(a.field());
  u32 n = (u32)std::max(a.coeffs_x().size(), b.coeffs_x().size());
  for (u32 i = 0; i < n; i++) r.set_coeff_x(i, a.coeff_x(i) - b.coeff_x(i));
  return r;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r(a.field());
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<UPoly> acc(a.coeffs_x().size() + b.coeffs_x().size() - 1, UPoly(a.field()));
  for (size_t i = 0; i < a.coeffs_x().size(); i++) {
    if (a.coeffs_x()[i].is_zero()) continue;
    for (size_t j = 0; j < b.coeffs_x().size(); j++) {
      if (b.coeffs_x()[j].is_zero()) continue;
      acc[i + j] = acc[i + j] + a.coeffs_x()[i] * b.coeffs_x()[j];
    }
  }
  for (u32 i = 0; i < acc.size(); i++) r.set_coeff_x(i, acc[i]);
  return r;
}

BiPoly derivative_x(const BiPoly& f) {
  BiPoly r(f.field());
  Field k = f.field();
  for (int i = 1; i <= f.deg_x(); i++)
    r.set_coeff_x((u32)(i - 1), k->from_int((u64)i) * f.coeff_x((u32)i));
  return r;
}

BiPoly derivative_y(const BiPoly& f) {
  BiPoly r(f.field());
  for (int i = 0; i <= f.deg_x(); i++) r.set_coeff_x((u32)i, derivative(f.coeff_x((u32)i)));
  return r;
}

// univariate resultant by the Euclidean recurrence
Elem resultant(const UPoly& f, const UPoly& g) {
  Field k = f.field();
  if (f.is_zero() || g.is_zero()) fail(errc::invalid_argument, "resultant of zero polynomial");
  UPoly a = f, b = g;
  Elem res = k->one();
  bool negate = false;
  while (b.deg() > 0) {
    UPoly r = divmod(a, b).second;
    if ((a.deg() & 1) && (b.deg() & 1)) negate = !negate;
    if (r.is_zero()) return k->zero();  // common factor
    res = k->mul(res, k->pow(b.lead(), (u128)(a.deg() - r.deg())));
    a = b;
    b = r;
  }
  // b is a nonzero constant
  res = k->mul(res, k->pow(b.lead(), (u128)a.deg()));
  return negate ? k->neg(res) : res;
}

static UPoly sylvester_bareiss(const BiPoly& f, const BiPoly& g) {
  Field k = f.field();
  int n = f.deg_x(), m = g.deg_x();
  int N = n + m;
  std::vector<std::vector<UPoly>> M((size_t)N, std::vector<UPoly>((size_t)N, UPoly(k)));
  for (int r = 0; r < m; r++)
    for (int i = 0; i <= n; i++) M[(size_t)r][(size_t)(r + i)] = f.coeff_x((u32)(n - i));
  for (int r = 0; r < n; r++)
    for (int i = 0; i <= m; i++) M[(size_t)(m + r)][(size_t)(r + i)] = g.coeff_x((u32)(m - i));

  UPoly prev = UPoly::constant(k->one());
  bool negate = false;
  for (int kk = 0; kk < N - 1; kk++) {
    int piv = -1;
    for (int r = kk; r < N; r++) {
      if (!M[(size_t)r][(size_t)kk].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return UPoly(k);  // singular: resultant 0
    if (piv != kk) {
      std::swap(M[(size_t)piv], M[(size_t)kk]);
      negate = !negate;
    }
    for (int i = kk + 1; i < N; i++) {
      for (int j = kk + 1; j < N; j++) {
        UPoly t = M[(size_t)kk][(size_t)kk] * M[(size_t)i][(size_t)j] -
                  M[(size_t)i][(size_t)kk] * M[(size_t)kk][(size_t)j];
        auto [q, r] = divmod(t, prev);
        if (!r.is_zero()) fail(errc::internal, "fraction-free elimination inexact");
        M[(size_t)i][(size_t)j] = q;
      }
      M[(size_t)i][(size_t)kk] = UPoly(k);
    }
    prev = M[(size_t)kk][(size_t)kk];
  }
  UPoly det = M[(size_t)(N - 1)][(size_t)(N - 1)];
  if (negate) det = k->neg(k->one()) * det;
  return det;
}

static UPoly lagrange(Field k, const std::vector<Elem>& xs, const std::vector<Elem>& ys) {
  // W = prod (x - x_j); term_i = y_i / W'(x_i) * W/(x - x_i)
  UPoly w = UPoly::constant(k->one());
  for (const Elem& xj : xs) w = w * UPoly(k, {k->neg(xj), k->one()});
  UPoly wd = derivative(w);
  UPoly acc(k);
  for (size_t i = 0; i < xs.size(); i++) {
    // synthetic division of W by (x - x_i)
    std::vector<Elem> q((size_t)w.deg(), k->zero());
    Elem carry = k->zero();
    for (int j = w.deg(); j >= 1; j--) {
      carry = k->add(w.coeffs()[(size_t)j], k->mul(carry, xs[i]));
      q[(size_t)(j - 1)] = carry;
    }
    Elem s = k->div(ys[i], eval(wd, xs[i]));
    acc = acc + s * UPoly(k, q);
  }
  return acc;
}

UPoly resultant_x(const BiPoly& f, const BiPoly& g) {
  Field k = f.field();
  if (f.is_zero() || g.is_zero()) fail(errc::invalid_argument, "resultant of zero polynomial");
  int n = f.deg_x(), m = g.deg_x();
  if (n == 0 && m == 0) return UPoly::constant(k->one());
  if (n == 0) {
    UPoly base = f.coeff_x(0), r = UPoly::constant(k->one());
    for (int i = 0; i < m; i++) r = r * base;
    return r;
  }
  if (m == 0) {
    UPoly base = g.coeff_x(0), r = UPoly::constant(k->one());
    for (int i = 0; i < n; i++) r = r * base;
    return r;
  }
  int fy = f.deg_y(), gy = g.deg_y();
  long D = (long)fy * m + (long)gy * n;
  const UPoly& lcf = f.coeffs_x().back();
  const UPoly& lcg = g.coeffs_x().back();
  long need = D + 1;
  if (k->size_fits_u64() && (u128)k->size_u64() > (u128)(need + lcf.deg() + lcg.deg() + 2)) {
    std::vector<Elem> xs, ys;
    xs.reserve((size_t)need);
    for (u64 idx = 0; (long)xs.size() < need; idx++) {
      if (idx >= k->size_u64()) return sylvester_bareiss(f, g);  // not enough good points
      Elem v = k->of_index(idx);
      if (k->is_zero(eval(lcf, v)) || k->is_zero(eval(lcg, v))) continue;
      xs.push_back(v);
      ys.push_back(resultant(f.eval_y(v), g.eval_y(v)));
    }
    return lagrange(k, xs, ys);
  }
  return sylvester_bareiss(f, g);
}

UPoly content_x(const BiPoly& a) {
  Field k = a.field();
  UPoly c(k);
  for (const UPoly& ci : a.coeffs_x()) {
    if (ci.is_zero()) continue;
    c = c.is_zero() ? monic(ci) : upoly_gcd(c, ci);
    if (c.deg() == 0) break;
  }
  return c;
}

static BiPoly divide_content(const BiPoly& a, const UPoly& c) {
  BiPoly r(a.field());
  for (u32 i = 0; i <= (u32)a.deg_x(); i++) {
    if (a.coeff_x(i).is_zero()) continue;
    auto [q, rem] = divmod(a.coeff_x(i), c);
    if (!rem.is_zero()) fail(errc::internal, "content division inexact");
    r.set_coeff_x(i, q);
  }
  return r;
}

// pseudo-remainder of a by b in (K[y])[x]
static BiPoly prem_x(const BiPoly& a, const BiPoly& b) {
  Field k = a.field();
  BiPoly r = a;
  UPoly lb = b.coeffs_x().back();
  while (!r.is_zero() && r.deg_x() >= b.deg_x()) {
    UPoly lr = r.coeffs_x().back();
    int shift = r.deg_x() - b.deg_x();
    // r = lb * r - lr * x^shift * b
    BiPoly t1(k), t2(k);
    for (u32 i = 0; i <= (u32)r.deg_x(); i++) t1.set_coeff_x(i, lb * r.coeff_x(i));
    for (u32 i = 0; i <= (u32)b.deg_x(); i++) t2.set_coeff_x(i + (u32)shift, lr * b.coeff_x(i));
    r = t1 - t2;
  }
  return r;
}

BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b) {
  Field k = a.field();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  UPoly ca = content_x(a), cb = content_x(b);
  UPoly c = upoly_gcd(ca, cb);
  BiPoly x = divide_content(a, ca), y = divide_content(b, cb);
  if (x.deg_x() < y.deg_x()) std::swap(x, y);
  while (!y.is_zero()) {
    BiPoly r = prem_x(x, y);
    if (!r.is_zero()) r = divide_content(r, content_x(r));
    x = y;
    y = r;
  }
  // multiply the content gcd back in
  BiPoly out(k);
  for (u32 i = 0; i <= (u32)x.deg_x(); i++) out.set_coeff_x(i, c * x.coeff_x(i));
  // normalize: top coefficient monic
  if (!out.is_zero()) {
    Elem s = k->inv(out.coeffs_x().back().lead());
    for (u32 i = 0; i <= (u32)out.deg_x(); i++) out.set_coeff_x(i, s * out.coeff_x(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Form

Form::Form(Field k, u32 d) : k_(k), d_(d) { c_.assign(monomial_count(), k->zero()); }

u32 Form::idx(u32 a, u32 b) const {
  // monomials with X-degree a occupy a block of d-a+1 entries
  return a * (d_ + 1) - a * (a - 1) / 2 + b;
}

std::pair<u32, u32> Form::monomial(u32 index) const {
  for (u32 a = 0; a <= d_; a++) {
    u32 block = d_ - a + 1;
    if (index < block) return {a, index};
    index -= block;
  }
  fail(errc::internal, "monomial index out of range");
}

bool Form::is_zero() const {
  for (const Elem& e : c_)
    if (!k_->is_zero(e)) return false;
  return true;
}

Elem Form::coeff(u32 a, u32 b) const {
  if (a + b > d_) fail(errc::invalid_argument, "monomial outside form degree");
  return c_[idx(a, b)];
}

void Form::set_coeff(u32 a, u32 b, const Elem& v) {
  if (a + b > d_) fail(errc::invalid_argument, "monomial outside form degree");
  c_[idx(a, b)] = v;
}

void Form::add_coeff(u32 a, u32 b, const Elem& v) {
  if (a + b > d_) fail(errc::invalid_argument, "monomial outside form degree");
  u32 i = idx(a, b);
  c_[i] = k_->add(c_[i], v);
}

Elem Form::evaluate(const Elem& x, const Elem& y, const Elem& z) const {
  // powers tables
  std::vector<Elem> px(d_ + 1), py(d_ + 1), pz(d_ + 1);
  px[0] = py[0] = pz[0] = k_->one();
  for (u32 i = 1; i <= d_; i++) {
    px[i] = k_->mul(px[i - 1], x);
    py[i] = k_->mul(py[i - 1], y);
    pz[i] = k_->mul(pz[i - 1], z);
  }
  Elem r = k_->zero();
  for (u32 a = 0; a <= d_; a++) {
    for (u32 b = 0; b + a <= d_; b++) {
      const Elem& c = c_[idx(a, b)];
      if (k_->is_zero(c)) continue;
      r = k_->add(r, k_->mul(k_->mul(c, px[a]), k_->mul(py[b], pz[d_ - a - b])));
    }
  }
  return r;
}

std::string Form::to_string() const {
  std::string s;
  for (u32 a = d_ + 1; a-- > 0;) {
    for (u32 b = d_ - a + 1; b-- > 0;) {
      Elem c = c_[idx(a, b)];
      if (k_->is_zero(c)) continue;
      if (!s.empty()) s += " + ";
      std::string cs = k_->to_string(c);
      bool unit = k_->is_one(c);
      u32 cdeg = d_ - a - b;
      bool has_vars = (a || b || cdeg);
      if (!unit) {
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        s += cs;
        if (has_vars) s += "*";
      }
      bool first = true;
      auto app = [&](const char* v, u32 e) {
        if (!e) return;
        if (!first) s += "*";
        first = false;
        s += v;
        if (e > 1) s += "^" + std::to_string(e);
      };
      app("X", a);
      app("Y", b);
      app("Z", cdeg);
      if (!has_vars && unit) s += "1";
    }
  }
  return s.empty() ? "0" : s;
}

Form operator+(const Form& a, const Form& b) {
  if (a.degree() != b.degree() || a.field() != b.field())
    fail(errc::invalid_argument, "form addition degree/field mismatch");
  Form r = a;
  for (u32 i = 0; i < r.monomial_count(); i++) {
    auto [x, y] = r.monomial(i);
    r.set_coeff(x, y, a.field()->add(a.coeff(x, y), b.coeff(x, y)));
  }
  return r;
}

Form operator*(const Elem& s, const Form& a) {
  Form r = a;
  for (u32 i = 0; i < r.monomial_count(); i++) {
    auto [x, y] = r.monomial(i);
    r.set_coeff(x, y, a.field()->mul(s, a.coeff(x, y)));
  }
  return r;
}

Form form_mul(const Form& a, const Form& b) {
  Field k = a.field();
  Form r(k, a.degree() + b.degree());
  for (u32 i = 0; i < a.monomial_count(); i++) {
    auto [a1, b1] = a.monomial(i);
    Elem ca = a.coeff_at(i);
    if (k->is_zero(ca)) continue;
    for (u32 j = 0; j < b.monomial_count(); j++) {
      auto [a2, b2] = b.monomial(j);
      Elem cb = b.coeff_at(j);
      if (k->is_zero(cb)) continue;
      r.add_coeff(a1 + a2, b1 + b2, k->mul(ca, cb));
    }
  }
  return r;
}

Form map_coeffs(const Form& f, Field target) {
  Form r(target, f.degree());
  for (u32 i = 0; i < f.monomial_count(); i++) {
    auto [a, b] = f.monomial(i);
    r.set_coeff(a, b, embed(f.coeff_at(i), target));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Mat3

Mat3 Mat3::identity(Field k) {
  Mat3 r = Mat3::zero(k);
  r.at(0, 0) = r.at(1, 1) = r.at(2, 2) = k->one();
  return r;
}

Mat3 Mat3::zero(Field k) {
  Mat3 r;
  r.k = k;
  r.m.assign(9, k->zero());
  return r;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Field k = a.k;
  Mat3 r = Mat3::zero(k);
  for (u32 i = 0; i < 3; i++)
    for (u32 j = 0; j < 3; j++) {
      Elem s = k->zero();
      for (u32 t = 0; t < 3; t++) s = k->add(s, k->mul(a.at(i, t), b.at(t, j)));
      r.at(i, j) = s;
    }
  return r;
}

Elem det(const Mat3& a) {
  Field k = a.k;
  Elem r = k->zero();
  r = k->add(r, k->mul(a.at(0, 0),
                       k->sub(k->mul(a.at(1, 1), a.at(2, 2)), k->mul(a.at(1, 2), a.at(2, 1)))));
  r = k->sub(r, k->mul(a.at(0, 1),
                       k->sub(k->mul(a.at(1, 0), a.at(2, 2)), k->mul(a.at(1, 2), a.at(2, 0)))));
  r = k->add(r, k->mul(a.at(0, 2),
                       k->sub(k->mul(a.at(1, 0), a.at(2, 1)), k->mul(a.at(1, 1), a.at(2, 0)))));
  return r;
}

Mat3 mat_inverse(const Mat3& a) {
  Field k = a.k;
  Elem d = det(a);
  if (k->is_zero(d)) fail(errc::invalid_argument, "singular matrix");
  Elem di = k->inv(d);
  Mat3 r = Mat3::zero(k);
  auto co = [&](u32 i, u32 j) {
    u32 i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return k->sub(k->mul(a.at(i1, j1), a.at(i2, j2)), k->mul(a.at(i1, j2), a.at(i2, j1)));
  };
  for (u32 i = 0; i < 3; i++)
    for (u32 j = 0; j < 3; j++) r.at(i, j) = k->mul(di, co(j, i));
  return r;
}

Mat3 canonicalize(const Mat3& a) {
  Field k = a.k;
  for (u32 i = 0; i < 9; i++) {
    if (!k->is_zero(a.m[i])) {
      if (k->is_one(a.m[i])) return a;
      Elem s = k->inv(a.m[i]);
      Mat3 r = a;
      for (u32 j = 0; j < 9; j++) r.m[j] = k->mul(s, a.m[j]);
      return r;
    }
  }
  fail(errc::invalid_argument, "zero matrix");
}

Mat3 map_coeffs(const Mat3& a, Field target) {
  Mat3 r;
  r.k = target;
  r.m.reserve(9);
  for (const Elem& e : a.m) r.m.push_back(embed(e, target));
  return r;
}

int mat_cmp(const Mat3& a, const Mat3& b) {
  for (u32 i = 0; i < 9; i++) {
    int c = cmp(a.m[i], b.m[i]);
    if (c) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Form substitution and restriction

Form substitute(const Form& f, const Mat3& m) {
  Field k = f.field();
  u32 d = f.degree();
  // linear forms: row i is the image of variable i
  Form lx(k, 1), ly(k, 1), lz(k, 1);
  auto setrow = [&](Form& t, u32 r) {
    t.set_coeff(1, 0, m.at(r, 0));
    t.set_coeff(0, 1, m.at(r, 1));
    t.set_coeff(0, 0, m.at(r, 2));
  };
  setrow(lx, 0);
  setrow(ly, 1);
  setrow(lz, 2);
  // powers
  std::vector<Form> px(d + 1), py(d + 1), pz(d + 1);
  px[0] = py[0] = pz[0] = Form(k, 0);
  px[0].set_coeff(0, 0, k->one());
  py[0] = px[0];
  pz[0] = px[0];
  for (u32 i = 1; i <= d; i++) {
    px[i] = form_mul(px[i - 1], lx);
    py[i] = form_mul(py[i - 1], ly);
    pz[i] = form_mul(pz[i - 1], lz);
  }
  Form r(k, d);
  for (u32 i = 0; i < f.monomial_count(); i++) {
    auto [a, b] = f.monomial(i);
    Elem c = f.coeff_at(i);
    if (k->is_zero(c)) continue;
    Form t = form_mul(form_mul(px[a], py[b]), pz[d - a - b]);
    for (u32 j = 0; j < t.monomial_count(); j++) {
      auto [ta, tb] = t.monomial(j);
      Elem tc = t.coeff_at(j);
      if (!k->is_zero(tc)) r.add_coeff(ta, tb, k->mul(c, tc));
    }
  }
  return r;
}

Form apply_linear(const Form& f, const Mat3& a) {
  Field k = f.field();
  if (k->is_zero(det(a))) fail(errc::invalid_argument, "apply_linear: singular matrix");
  Mat3 t = Mat3::zero(k);
  for (u32 i = 0; i < 3; i++)
    for (u32 j = 0; j < 3; j++) t.at(i, j) = a.at(j, i);
  return substitute(f, t);
}

Form partial(const Form& f, int var) {
  Field k = f.field();
  u32 d = f.degree();
  if (d == 0) return Form(k, 0);
  Form r(k, d - 1);
  for (u32 i = 0; i < f.monomial_count(); i++) {
    auto [a, b] = f.monomial(i);
    u32 cdeg = d - a - b;
    Elem c = f.coeff_at(i);
    if (k->is_zero(c)) continue;
    u32 e = var == 0 ? a : var == 1 ? b : cdeg;
    if (e == 0) continue;
    Elem nc = k->mul(k->from_int(e), c);
    if (k->is_zero(nc)) continue;
    if (var == 0)
      r.add_coeff(a - 1, b, nc);
    else if (var == 1)
      r.add_coeff(a, b - 1, nc);
    else
      r.add_coeff(a, b, nc);
  }
  return r;
}

BiPoly dehomogenize(const Form& f, int var) {
  Field k = f.field();
  u32 d = f.degree();
  BiPoly r(k);
  for (u32 i = 0; i < f.monomial_count(); i++) {
    auto [a, b] = f.monomial(i);
    u32 cdeg = d - a - b;
    Elem c = f.coeff_at(i);
    if (k->is_zero(c)) continue;
    u32 e1, e2;  // exponents of the two surviving variables in X,Y,Z order
    if (var == 0) {
      e1 = b;
      e2 = cdeg;
    } else if (var == 1) {
      e1 = a;
      e2 = cdeg;
    } else {
      e1 = a;
      e2 = b;
    }
    UPoly cur = r.coeff_x(e1);
    cur.set_coeff(e2, k->add(cur.coeff(e2), c));
    r.set_coeff_x(e1, cur);
  }
  return r;
}

std::vector<Elem> restrict_to_segment(const Form& f, const Elem p0[3], const Elem p1[3]) {
  Field k = f.field();
  u32 d = f.degree();
  // binomial expansions of (s*p0_i + t*p1_i)^a, as vectors of s-major coeffs
  auto pows = [&](const Elem& u, const Elem& v) {
    std::vector<std::vector<Elem>> p(d + 1);
    p[0] = {k->one()};
    for (u32 a = 1; a <= d; a++) {
      p[a].assign(a + 1, k->zero());
      for (u32 j = 0; j < a; j++) {
        p[a][j] = k->add(p[a][j], k->mul(p[a - 1][j], u));
        p[a][j + 1] = k->add(p[a][j + 1], k->mul(p[a - 1][j], v));
      }
    }
    return p;
  };
  auto PX = pows(p0[0], p1[0]), PY = pows(p0[1], p1[1]), PZ = pows(p0[2], p1[2]);
  std::vector<Elem> out(d + 1, k->zero());
  std::vector<Elem> tmp, tmp2;
  for (u32 i = 0; i < f.monomial_count(); i++) {
    auto [a, b] = f.monomial(i);
    u32 cdeg = d - a - b;
    Elem c = f.coeff_at(i);
    if (k->is_zero(c)) continue;
    // convolve PX[a] * PY[b] * PZ[cdeg]
    tmp.assign(a + b + 1, k->zero());
    for (u32 x = 0; x <= a; x++)
      for (u32 y = 0; y <= b; y++) tmp[x + y] = k->add(tmp[x + y], k->mul(PX[a][x], PY[b][y]));
    tmp2.assign(d + 1, k->zero());
    for (u32 x = 0; x <= a + b; x++)
      for (u32 z = 0; z <= cdeg; z++)
        tmp2[x + z] = k->add(tmp2[x + z], k->mul(tmp[x], PZ[cdeg][z]));
    for (u32 j = 0; j <= d; j++) out[j] = k->add(out[j], k->mul(c, tmp2[j]));
  }
  return out;
}

UPoly restrict_to_line(const Form& f, const Elem p0[3], const Elem p1[3]) {
  std::vector<Elem> seg = restrict_to_segment(f, p0, p1);
  return UPoly(f.field(), std::move(seg));
}

std::optional<Elem> proportional_scalar(const Form& f, const Form& g) {
  Field k = f.field();
  if (f.degree() != g.degree()) return std::nullopt;
  std::optional<Elem> s;
  for (u32 i = 0; i < f.monomial_count(); i++) {
    Elem a = f.coeff_at(i), b = g.coeff_at(i);
    bool za = k->is_zero(a), zb = k->is_zero(b);
    if (za != zb) return std::nullopt;
    if (za) continue;
    Elem r = k->div(b, a);
    if (!s)
      s = r;
    else if (!(*s == r))
      return std::nullopt;
  }
  return s;  // nullopt when both forms are zero
}

}  // namespace gp
