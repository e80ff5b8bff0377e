#include "doctest.h"
#include "gp/gf.hpp"

using namespace gp;

static Elem rnd_elem(Field f, Rng& rng) { return f->of_index(rng.below(f->size_u64())); }

TEST_CASE("deterministic construction") {
  Field f2 = gf(2, 1);
  CHECK(f2->modulus() == std::vector<u32>{0, 1});  // t
  Field f4 = gf(2, 2);
  CHECK(f4->modulus() == std::vector<u32>{1, 1, 1});  // the unique irreducible quadratic
  CHECK(gf(2, 2) == f4);                              // interned

  // F_9: exhaustive root scan over F_3 confirms the chosen modulus has no root
  Field f9 = gf(3, 2);
  const auto& mod = f9->modulus();
  for (u64 x = 0; x < 3; x++) {
    u64 v = (mod[0] + mod[1] * x + mod[2] * x * x) % 3;
    CHECK(v != 0);
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(gf(4, 1), Error);   // non-prime
  CHECK_THROWS_AS(gf(1, 1), Error);
  CHECK_THROWS_AS(gf(2, 0), Error);   // zero degree
  CHECK_THROWS_AS(gf(2, 4000), Error);
}

TEST_CASE("field axioms hold on sampled triples") {
  for (auto [p, m] : {std::pair<u64, u32>{2, 4}, {3, 2}, {5, 1}, {7, 2}, {2, 7}}) {
    Field f = gf(p, m);
    Rng rng(mix64(p * 100 + m));
    for (int it = 0; it < 200; it++) {
      Elem x = rnd_elem(f, rng), y = rnd_elem(f, rng), z = rnd_elem(f, rng);
      CHECK(f->add(f->add(x, y), z) == f->add(x, f->add(y, z)));
      CHECK(f->mul(x, f->add(y, z)) == f->add(f->mul(x, y), f->mul(x, z)));
      CHECK(f->mul(f->mul(x, y), z) == f->mul(x, f->mul(y, z)));
      if (!f->is_zero(x)) CHECK(f->is_one(f->mul(x, f->inv(x))));
      // Frobenius is additive
      CHECK(f->frob(f->add(x, y)) == f->add(f->frob(x), f->frob(y)));
      // x^(p^m) = x
      CHECK(f->pow_p(x, m) == x);
    }
  }
}

TEST_CASE("quotient fields agree with standard models") {
  // F_4[y]/(irreducible quadratic) is an F_16; check axioms and inversion
  Field f4 = gf(2, 2);
  // find a monic irreducible quadratic over F_4 by scanning
  std::vector<Elem> mod;
  for (u64 c0 = 0; c0 < 4 && mod.empty(); c0++) {
    for (u64 c1 = 0; c1 < 4 && mod.empty(); c1++) {
      Elem e0 = f4->of_index(c0), e1 = f4->of_index(c1);
      bool has_root = false;
      for (u64 x = 0; x < 4; x++) {
        Elem xv = f4->of_index(x);
        Elem v = f4->add(f4->add(f4->mul(xv, xv), f4->mul(e1, xv)), e0);
        if (f4->is_zero(v)) has_root = true;
      }
      if (!has_root) mod = {e0, e1, f4->one()};
    }
  }
  REQUIRE(!mod.empty());
  Field q = quotient_field(f4, mod);
  CHECK(q->degree() == 4);
  Rng rng(99);
  for (int it = 0; it < 100; it++) {
    Elem x = rnd_elem(q, rng), y = rnd_elem(q, rng);
    CHECK(q->mul(x, y) == q->mul(y, x));
    if (!q->is_zero(x)) CHECK(q->is_one(q->mul(x, q->inv(x))));
    CHECK(q->pow_p(x, 4) == x);
  }
}

TEST_CASE("embeddings") {
  Field f2 = gf(2, 1), f4 = gf(2, 2), f16 = gf(2, 4);

  CHECK(embed(f2->one(), f4) == f4->one());
  CHECK(embed(f2->zero(), f4) == f4->zero());

  // omega in F_4 keeps multiplicative order 3 in F_16 (repeated multiplication)
  Elem w = f4->gen();
  Elem u = embed(w, f16);
  Elem acc = u;
  int ord = 1;
  while (!f16->is_one(acc)) {
    acc = f16->mul(acc, u);
    ord++;
    REQUIRE(ord <= 16);
  }
  CHECK(ord == 3);

  // ring homomorphism on samples
  Rng rng(7);
  for (int it = 0; it < 100; it++) {
    Elem x = rnd_elem(f4, rng), y = rnd_elem(f4, rng);
    CHECK(embed(f4->add(x, y), f16) == f16->add(embed(x, f16), embed(y, f16)));
    CHECK(embed(f4->mul(x, y), f16) == f16->mul(embed(x, f16), embed(y, f16)));
  }

  // chain consistency across the tower
  for (u64 x = 0; x < 2; x++) {
    Elem e = f2->of_index(x);
    CHECK(embed(embed(e, f4), f16) == embed(e, f16));
  }
  Field f64 = gf(2, 6), f8 = gf(2, 3);
  for (u64 x = 0; x < 4; x++) {
    Elem e = f4->of_index(x);
    CHECK(embed(e, f64) == embed(e, f64));
  }
  for (u64 x = 0; x < 2; x++) {
    Elem e = f2->of_index(x);
    CHECK(embed(embed(e, f8), f64) == embed(embed(e, f4), f64));
  }

  // a diamond: F_3 -> F_9 -> F_81 vs F_3 -> F_81
  Field f3 = gf(3, 1), f9 = gf(3, 2), f81 = gf(3, 4);
  for (u64 x = 0; x < 3; x++) {
    Elem e = f3->of_index(x);
    CHECK(embed(embed(e, f9), f81) == embed(e, f81));
  }

  CHECK_THROWS_AS(embed(f4->gen(), f8), Error);          // 2 does not divide 3
  CHECK_THROWS_AS(embed(f4->gen(), gf(3, 2)), Error);    // characteristic mismatch
}

TEST_CASE("embedding round-trip via power-basis solve") {
  Field f4 = gf(2, 2), f16 = gf(2, 4);
  for (u64 x = 0; x < 4; x++) {
    Elem e = f4->of_index(x);
    Elem big = embed(e, f16);
    auto back = try_project(big, f4);
    REQUIRE(back.has_value());
    CHECK(*back == e);
  }
  // an element outside the subfield copy projects to nothing
  Elem g = f16->gen();
  CHECK(element_degree(g) == 4);
  CHECK(!try_project(g, f4).has_value());
}

TEST_CASE("roots of unity") {
  Field f4 = gf(2, 2);
  auto mu3 = roots_of_unity(f4, 3);
  CHECK(mu3.size() == 3);  // F_4* is cyclic of order 3
  for (const Elem& z : mu3) CHECK(f4->is_one(f4->pow(z, 3)));

  auto mu3_f2 = roots_of_unity(gf(2, 1), 3);
  CHECK(mu3_f2.size() == 1);  // 3 does not divide 2-1

  // oracle: scan all 15 nonzero elements of F_16 for x^5 = 1
  Field f16 = gf(2, 4);
  auto mu5 = roots_of_unity(f16, 5);
  CHECK(mu5.size() == 5);
  int scan_count = 0;
  for (u64 i = 1; i < 16; i++) {
    Elem x = f16->of_index(i);
    if (f16->is_one(f16->pow(x, 5))) scan_count++;
  }
  CHECK(scan_count == 5);
  for (const Elem& z : mu5) {
    u64 o = element_order(z);
    CHECK(5 % o == 0);
  }

  CHECK_THROWS_AS(roots_of_unity(gf(2, 2), 4), Error);  // p | l
}

TEST_CASE("element order") {
  Field f4 = gf(2, 2), f16 = gf(2, 4);
  CHECK(element_order(f4->one()) == 1);
  CHECK(element_order(f4->gen()) == 3);
  Elem g = least_primitive_element(f16);
  // scan powers: the order really is 15
  Elem acc = g;
  int ord = 1;
  while (!f16->is_one(acc)) {
    acc = f16->mul(acc, g);
    ord++;
  }
  CHECK(ord == 15);
  CHECK(element_order(g) == 15);
  CHECK_THROWS_AS(element_order(f4->zero()), Error);
}

TEST_CASE("element printing") {
  Field f4 = gf(2, 2);
  CHECK(f4->to_string(f4->zero()) == "0");
  CHECK(f4->to_string(f4->one()) == "1");
  CHECK(f4->to_string(f4->gen()) == "w");
  Field f9 = gf(3, 2);
  Elem e = f9->add(f9->mul(f9->from_int(2), f9->gen()), f9->one());
  CHECK(f9->to_string(e) == "2*w+1");
}
