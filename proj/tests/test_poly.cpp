#include <set>

#include "doctest.h"
#include "gp/poly.hpp"

using namespace gp;

static UPoly mk(Field k, std::initializer_list<u64> cs) {
  std::vector<Elem> v;
  for (u64 c : cs) v.push_back(k->from_int(c));
  return UPoly(k, std::move(v));
}

static UPoly rnd_poly(Field k, int deg, Rng& rng) {
  std::vector<Elem> c((size_t)deg + 1, k->zero());
  for (auto& e : c) e = k->of_index(rng.below(k->size_u64()));
  return UPoly(k, std::move(c));
}

TEST_CASE("gcd basics") {
  Field f2 = gf(2, 1);
  UPoly a = mk(f2, {0, 1, 1});  // x^2+x
  UPoly x = mk(f2, {0, 1});
  CHECK(upoly_gcd(a, x) == x);
  CHECK(upoly_gcd(a, UPoly(f2)) == monic(a));

  // oracle: enumerate all monic divisors of both x^4+x and x^2+x over F_2
  UPoly b = mk(f2, {0, 1, 0, 0, 1});  // x^4+x
  UPoly g = upoly_gcd(b, a);
  CHECK(g == a);  // x^2+x
  for (u64 mask = 0; mask < 8; mask++) {
    UPoly cand = mk(f2, {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, 1});  // monic cubics
    bool div_both = divmod(b, cand).second.is_zero() && divmod(a, cand).second.is_zero();
    CHECK(!div_both);  // nothing of degree 3 divides both
  }
  CHECK_THROWS_AS(upoly_gcd(UPoly(f2), UPoly(f2)), Error);
}

TEST_CASE("distinct degree profile") {
  Field f2 = gf(2, 1);
  auto prof1 = distinct_degree_profile(mk(f2, {1, 1, 1}));
  CHECK(prof1 == std::map<u32, u32>{{2, 1}});
  // x^4+x = x (x+1) (x^2+x+1) by trial division over F_2
  auto prof2 = distinct_degree_profile(mk(f2, {0, 1, 0, 0, 1}));
  CHECK(prof2 == std::map<u32, u32>{{1, 2}, {2, 1}});
  // squaring adds no factors
  UPoly q = mk(f2, {1, 1, 1});
  auto prof3 = distinct_degree_profile(q * q);
  CHECK(prof3 == std::map<u32, u32>{{2, 1}});
}

TEST_CASE("roots") {
  Field f2 = gf(2, 1), f4 = gf(2, 2);
  // z^4 + z vanishes identically on F_4
  UPoly zq = mk(f2, {0, 1, 0, 0, 1});
  auto r4 = roots_over(zq, f4);
  CHECK(r4.size() == 4);
  CHECK(roots_over(mk(f2, {1, 1, 1}), f2).empty());
  auto rw = roots_over(mk(f2, {1, 1, 1}), f4);
  CHECK(rw.size() == 2);
  // scan oracle over all four elements
  std::set<u64> idx;
  for (u64 i = 0; i < 4; i++) {
    Elem x = f4->of_index(i);
    Elem v = f4->add(f4->add(f4->mul(x, x), x), f4->one());
    if (f4->is_zero(v)) idx.insert(i);
  }
  std::set<u64> got;
  for (auto& r : rw) got.insert(f4->index_of(r));
  CHECK(idx == got);

  // subset property under embedding
  for (auto& r : roots_over(zq, f2)) {
    Elem up = embed(r, f4);
    bool found = false;
    for (auto& s : r4) found = found || (s == up);
    CHECK(found);
  }
}

TEST_CASE("roots with multiplicity and squarefree part") {
  Field f9 = gf(3, 2);
  Rng rng(5);
  UPoly x = UPoly::var(f9);
  UPoly f = mk(f9, {1, 1});         // x+1
  UPoly g = mk(f9, {2, 1});         // x+2
  UPoly prod = f * f * f * g;       // (x+1)^3 (x+2)
  auto rm = roots_with_multiplicity(prod);
  REQUIRE(rm.size() == 2);
  for (auto& [r, m] : rm) {
    if (f9->is_one(f9->neg(r)))
      CHECK(m == 3);  // root -1 = 2
    else
      CHECK(m == 1);
  }
  UPoly rad = squarefree_part(prod);
  CHECK(rad == monic(f * g));
  // p-th power handling: (x+1)^3 over F_3 has zero derivative
  UPoly cube = f * f * f;
  CHECK(squarefree_part(cube) == monic(f));
}

TEST_CASE("irreducible factors rebuild the radical") {
  for (auto [p, m] : {std::pair<u64, u32>{2, 1}, {2, 2}, {3, 1}, {5, 1}}) {
    Field k = gf(p, m);
    Rng rng(p * 31 + m);
    for (int it = 0; it < 20; it++) {
      UPoly f = rnd_poly(k, 2 + (int)rng.below(6), rng);
      if (f.deg() < 1) continue;
      auto fac = irreducible_factors(f);
      UPoly prod = UPoly::constant(k->one());
      for (auto& q : fac) {
        prod = prod * q;
        // each factor genuinely divides f
        CHECK(divmod(f, q).second.is_zero());
      }
      CHECK(prod == squarefree_part(f));
    }
  }
}

TEST_CASE("univariate resultant matches Sylvester elimination") {
  // resultant() vs the fraction-free Sylvester path (constant-in-y bipolys)
  for (auto [p, m] : {std::pair<u64, u32>{2, 2}, {3, 1}, {5, 1}}) {
    Field k = gf(p, m);
    Rng rng(p * 7 + m);
    for (int it = 0; it < 30; it++) {
      UPoly f = rnd_poly(k, 1 + (int)rng.below(4), rng);
      UPoly g = rnd_poly(k, 1 + (int)rng.below(4), rng);
      if (f.deg() < 1 || g.deg() < 1) continue;
      BiPoly bf(k), bg(k);
      for (int i = 0; i <= f.deg(); i++)
        bf.set_coeff_x((u32)i, UPoly::constant(f.coeffs()[(size_t)i]));
      for (int i = 0; i <= g.deg(); i++)
        bg.set_coeff_x((u32)i, UPoly::constant(g.coeffs()[(size_t)i]));
      UPoly r = resultant_x(bf, bg);
      Elem direct = resultant(f, g);
      if (r.is_zero())
        CHECK(k->is_zero(direct));
      else {
        REQUIRE(r.deg() == 0);
        CHECK(r.coeffs()[0] == direct);
      }
      // resultant vanishes iff the gcd is nonconstant
      bool has_common = upoly_gcd(f, g).deg() > 0;
      CHECK(k->is_zero(direct) == has_common);
    }
  }
}

TEST_CASE("bivariate resultant examples") {
  Field f5 = gf(5, 1);
  // Res_x(x - y, x - 1) = +-(y - 1)
  BiPoly a(f5), b(f5);
  a.set_coeff_x(1, UPoly::constant(f5->one()));
  a.set_coeff_x(0, mk(f5, {0, 4}));  // -y
  b.set_coeff_x(1, UPoly::constant(f5->one()));
  b.set_coeff_x(0, UPoly::constant(f5->from_int(4)));  // -1
  UPoly r = resultant_x(a, b);
  bool plus = r == mk(f5, {4, 1});   // y - 1
  bool minus = r == mk(f5, {1, 4});  // 1 - y
  CHECK((plus || minus));

  // Res_x(x^2, x + y) = y^2
  BiPoly c(f5), d(f5);
  c.set_coeff_x(2, UPoly::constant(f5->one()));
  d.set_coeff_x(1, UPoly::constant(f5->one()));
  d.set_coeff_x(0, mk(f5, {0, 1}));  // y
  UPoly r2 = resultant_x(c, d);
  CHECK(r2 == mk(f5, {0, 0, 1}));
}

TEST_CASE("resultant detects common factors on random bivariate inputs") {
  Field f4 = gf(2, 2);
  Rng rng(17);
  for (int it = 0; it < 15; it++) {
    // build f = u*w, g = v*w sharing the factor w
    auto rnd_bi = [&](int dx, int dy) {
      BiPoly r(f4);
      for (int i = 0; i <= dx; i++) {
        std::vector<Elem> c((size_t)dy + 1, f4->zero());
        for (auto& e : c) e = f4->of_index(rng.below(4));
        r.set_coeff_x((u32)i, UPoly(f4, std::move(c)));
      }
      return r;
    };
    BiPoly w = rnd_bi(1, 1), u = rnd_bi(1, 1), v = rnd_bi(1, 1);
    if (w.deg_x() < 1 || u.is_zero() || v.is_zero()) continue;
    UPoly r = resultant_x(u * w, v * w);
    CHECK(r.is_zero());  // shared factor with positive x-degree
  }
}

TEST_CASE("bivariate gcd") {
  Field f4 = gf(2, 2);
  BiPoly x(f4), y(f4);
  x.set_coeff_x(1, UPoly::constant(f4->one()));
  y.set_coeff_x(0, mk(f4, {0, 1}));
  BiPoly w = x * x + y;        // x^2 + y
  BiPoly u = x + y;            // x + y
  BiPoly g = bipoly_gcd(w * u, (x * x * x + y * y) * u);
  // gcd should be exactly u (x + y) up to scalar
  CHECK(g.deg_x() == 1);
  UPoly r = resultant_x(g, u);
  CHECK(r.is_zero());
}

TEST_CASE("form partials and Euler relation") {
  Field f2 = gf(2, 1);
  Form klein(f2, 4);
  klein.set_coeff(3, 1, f2->one());  // X^3 Y
  klein.set_coeff(0, 3, f2->one());  // Y^3 Z
  klein.set_coeff(1, 0, f2->one());  // Z^3 X
  Form kx = partial(klein, 0);
  // char 2: 3 X^2 Y + Z^3 = X^2 Y + Z^3
  CHECK(kx.coeff(2, 1) == f2->one());
  CHECK(kx.coeff(0, 0) == f2->one());
  CHECK(kx.coeff(1, 1) == f2->zero());

  Form x4(f2, 4);
  x4.set_coeff(4, 0, f2->one());
  CHECK(partial(x4, 0).is_zero());

  // Euler relation X F_X + Y F_Y + Z F_Z = (d mod p) F on random forms
  for (auto [p, m] : {std::pair<u64, u32>{2, 2}, {3, 1}, {5, 1}}) {
    Field k = gf(p, m);
    Rng rng(p + m);
    for (int it = 0; it < 10; it++) {
      u32 d = 3 + (u32)rng.below(3);
      Form f(k, d);
      for (u32 i = 0; i < f.monomial_count(); i++) {
        auto [a, b] = f.monomial(i);
        f.set_coeff(a, b, k->of_index(rng.below(k->size_u64())));
      }
      Form vx(k, 1), vy(k, 1), vz(k, 1);
      vx.set_coeff(1, 0, k->one());
      vy.set_coeff(0, 1, k->one());
      vz.set_coeff(0, 0, k->one());
      Form lhs = form_mul(vx, partial(f, 0));
      lhs = lhs + form_mul(vy, partial(f, 1));
      lhs = lhs + form_mul(vz, partial(f, 2));
      Form rhs = k->from_int(d) * f;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("apply_linear composition contract and invariance") {
  Field f4 = gf(2, 2);
  Form klein(f4, 4);
  klein.set_coeff(3, 1, f4->one());
  klein.set_coeff(0, 3, f4->one());
  klein.set_coeff(1, 0, f4->one());

  CHECK(apply_linear(klein, Mat3::identity(f4)) == klein);

  // cyclic permutation X->Y->Z->X fixes the Klein form
  Mat3 cyc = Mat3::zero(f4);
  cyc.at(0, 1) = f4->one();  // X -> Y
  cyc.at(1, 2) = f4->one();
  cyc.at(2, 0) = f4->one();
  CHECK(apply_linear(klein, cyc) == klein);

  Rng rng(23);
  auto rnd_mat = [&]() {
    while (true) {
      Mat3 a = Mat3::zero(f4);
      for (u32 i = 0; i < 9; i++) a.m[i] = f4->of_index(rng.below(4));
      if (!f4->is_zero(det(a))) return a;
    }
  };
  for (int it = 0; it < 20; it++) {
    Mat3 a = rnd_mat(), b = rnd_mat();
    Form f(f4, 3);
    for (u32 i = 0; i < f.monomial_count(); i++) {
      auto [x, y] = f.monomial(i);
      f.set_coeff(x, y, f4->of_index(rng.below(4)));
    }
    CHECK(apply_linear(f, mat_mul(a, b)) == apply_linear(apply_linear(f, b), a));
    // acting by A then A^-1 recovers the form up to scalar
    Form g = apply_linear(apply_linear(f, a), mat_inverse(a));
    if (!f.is_zero()) {
      auto s = proportional_scalar(f, g);
      CHECK(s.has_value());
    }
  }
}

TEST_CASE("restriction to lines") {
  Field f2 = gf(2, 1);
  Form fermat5(f2, 5);
  fermat5.set_coeff(5, 0, f2->one());
  fermat5.set_coeff(0, 5, f2->one());
  fermat5.set_coeff(0, 0, f2->one());

  Elem p0[3] = {f2->one(), f2->zero(), f2->zero()};
  Elem p1[3] = {f2->zero(), f2->one(), f2->zero()};
  auto seg = restrict_to_segment(fermat5, p0, p1);
  // s^5 + t^5
  REQUIRE(seg.size() == 6);
  CHECK(f2->is_one(seg[0]));
  CHECK(f2->is_one(seg[5]));
  for (int i = 1; i < 5; i++) CHECK(f2->is_zero(seg[(size_t)i]));

  Form klein(f2, 4);
  klein.set_coeff(3, 1, f2->one());
  klein.set_coeff(0, 3, f2->one());
  klein.set_coeff(1, 0, f2->one());
  // restrict to X=0 through (0:1:0) and (0:0:1): Y^3 Z
  Elem q0[3] = {f2->zero(), f2->one(), f2->zero()};
  Elem q1[3] = {f2->zero(), f2->zero(), f2->one()};
  auto seg2 = restrict_to_segment(klein, q0, q1);
  // s^3 t -> triple root at t=infinity, i.e. at (0:0:1)
  REQUIRE(seg2.size() == 5);
  CHECK(f2->is_one(seg2[1]));
  CHECK(f2->is_zero(seg2[0]));
  CHECK(f2->is_zero(seg2[2]));
  CHECK(f2->is_zero(seg2[3]));
  CHECK(f2->is_zero(seg2[4]));
  UPoly r = restrict_to_line(klein, q1, q0);  // point of interest (0:0:1) at t=0
  // F(q1 + t q0) = t^3, valuation 3
  CHECK(r.deg() == 3);
  CHECK(f2->is_zero(r.coeff(0)));
  CHECK(f2->is_zero(r.coeff(1)));
  CHECK(f2->is_zero(r.coeff(2)));
}

TEST_CASE("fermat quintic partials have no common zero over F_16") {
  Field f2 = gf(2, 1), f16 = gf(2, 4);
  Form f(f2, 5);
  f.set_coeff(5, 0, f2->one());
  f.set_coeff(0, 5, f2->one());
  f.set_coeff(0, 0, f2->one());
  BiPoly fx = dehomogenize(partial(f, 0), 2);
  BiPoly fy = dehomogenize(partial(f, 1), 2);
  BiPoly fz = dehomogenize(partial(f, 2), 2);
  // scan oracle: all (x, y) in F_16^2
  int common = 0;
  for (u64 i = 0; i < 16; i++)
    for (u64 j = 0; j < 16; j++) {
      Elem x = f16->of_index(i), y = f16->of_index(j);
      BiPoly fx16(f16), fy16(f16), fz16(f16);
      // evaluate via embedding the tiny F_2 coefficients
      auto ev = [&](const BiPoly& g) {
        Elem acc = f16->zero();
        for (int a = 0; a <= g.deg_x(); a++)
          for (int b = 0; b <= g.coeff_x((u32)a).deg(); b++) {
            Elem c = embed(g.coeff_x((u32)a).coeffs()[(size_t)b], f16);
            acc = f16->add(acc, f16->mul(c, f16->mul(f16->pow(x, (u32)a), f16->pow(y, (u32)b))));
          }
        return acc;
      };
      if (f16->is_zero(ev(fx)) && f16->is_zero(ev(fy)) && f16->is_zero(ev(fz))) common++;
    }
  CHECK(common == 0);
  // the resultant-based elimination sees the same: Res_x(fx, fy) = y^16, whose
  // only root y=0 fails the remaining equations (fz = 1 on the chart)
  UPoly r = resultant_x(fx, fy);
  auto roots = roots_over(r, f16);
  for (auto& y0 : roots) {
    CHECK(f16->is_one(embed(fz.coeff_x(0).coeffs()[0], f16)));
    (void)y0;
  }
}

TEST_CASE("pow_p_mod and compose_shift") {
  Field f4 = gf(2, 2);
  UPoly f = mk(f4, {1, 1, 0, 0, 1});
  UPoly x = UPoly::var(f4);
  CHECK(pow_p_mod(x, 2, f) == pow_mod(x, 4, f));
  UPoly g = mk(f4, {1, 0, 1});  // 1 + x^2
  UPoly shifted = compose_shift(g, f4->one());  // 1 + (x+1)^2 = x^2 (char 2)
  CHECK(shifted == mk(f4, {0, 0, 1}));
}
