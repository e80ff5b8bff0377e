#include "doctest.h"
#include "gp/parse.hpp"

using namespace gp;

TEST_CASE("field spec") {
  auto s = parse_field_spec("p=2,m=2");
  CHECK(s.p == 2);
  CHECK(s.m == 2);
  CHECK(s.modulus.empty());
  auto s2 = parse_field_spec("p=3, m=2, mod=1,0,1");
  CHECK(s2.modulus == std::vector<u32>{1, 0, 1});
  CHECK_THROWS_AS(parse_field_spec("p=2"), Error);
  CHECK_THROWS_AS(parse_field_spec("m=2,q=1"), Error);
}

TEST_CASE("forms parse and round-trip") {
  Field f2 = gf(2, 1);
  Form klein = parse_form("X^3*Y + Y^3*Z + Z^3*X", f2);
  CHECK(klein.degree() == 4);
  CHECK(klein.coeff(3, 1) == f2->one());
  CHECK(klein.coeff(1, 0) == f2->one());
  // whitespace-insensitive
  CHECK(parse_form("X^3*Y+Y^3*Z+Z^3*X", f2) == klein);
  CHECK(parse_form("  X^3 * Y + Y ^3* Z + Z^3 *X ", f2) == klein);
  // printing round-trips through the parser
  CHECK(parse_form(klein.to_string(), f2) == klein);

  Field f4 = gf(2, 2);
  Form g = parse_form("w^2*Y^5 + (w+1)*X^5 + Z^5", f4);
  CHECK(g.coeff(0, 5) == f4->mul(f4->gen(), f4->gen()));
  CHECK(parse_form(g.to_string(), f4) == g);

  Field f9 = gf(3, 2);
  Form h = parse_form("X^3 - Y^2*Z + 2*Z^3", f9);
  CHECK(h.coeff(0, 2) == f9->from_int(2));  // -1 = 2
  CHECK(parse_form(h.to_string(), f9) == h);
}

TEST_CASE("non-homogeneous input names the offending monomial") {
  Field f2 = gf(2, 1);
  try {
    parse_form("X^3 + Y^2", f2);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
    std::string msg = e.what();
    CHECK(msg.find("Y^2") != std::string::npos);
  }
}

TEST_CASE("parse errors carry position") {
  Field f2 = gf(2, 1);
  try {
    parse_form("X^3*Y + $", f2);
    FAIL("expected parse error");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
}

TEST_CASE("elements and points") {
  Field f4 = gf(2, 2);
  CHECK(parse_element("w^2", f4) == f4->mul(f4->gen(), f4->gen()));
  CHECK(parse_element("0", f4) == f4->zero());
  auto pt = parse_point("1:w:0", f4);
  CHECK(pt[0] == f4->one());
  CHECK(pt[1] == f4->gen());
  CHECK(pt[2] == f4->zero());
  CHECK_THROWS_AS(parse_point("0:0:0", f4), Error);
  CHECK_THROWS_AS(parse_point("1:2", f4), Error);
  CHECK_THROWS_AS(parse_element("X", f4), Error);
}

TEST_CASE("curve files") {
  CurveInput ci = parse_curve_file("# a comment\np=2,m=1\nX^5+Y^5+Z^5\n");
  CHECK(ci.field == gf(2, 1));
  CHECK(ci.form.degree() == 5);

  // custom modulus is transported to the canonical model
  // t^2+t+1 is the canonical F_4 modulus already; use it explicitly
  CurveInput c2 = parse_curve_file("p=2,m=2,mod=1,1,1\nw*X^3+Y^3+Z^3\n");
  CHECK(c2.field == gf(2, 2));
  CHECK(c2.form.degree() == 3);
  CHECK_THROWS_AS(parse_curve_file("p=2,m=1\n"), Error);
}
