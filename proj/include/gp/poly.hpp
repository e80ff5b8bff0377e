#ifndef GP_POLY_HPP
#define GP_POLY_HPP

// Univariate and bivariate polynomial algebra over fields from gf.hpp,
// homogeneous trivariate forms, and 3x3 projective matrices.
//
// UPoly is dense, low-to-high, trimmed (no zero leading coefficient).
// BiPoly is a polynomial in x whose coefficients are UPoly in y.
// Form is a dense homogeneous trivariate polynomial of fixed degree.

#include <map>
#include <utility>
#include <vector>

#include "gp/gf.hpp"

namespace gp {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(Field k) : k_(k) {}
  UPoly(Field k, std::vector<Elem> cs) : k_(k), c_(std::move(cs)) { trim(); }
  static UPoly var(Field k);                 // x
  static UPoly constant(const Elem& c);

  Field field() const { return k_; }
  int deg() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(u32 i) const { return i < c_.size() ? c_[i] : k_->zero(); }
  Elem lead() const;
  void set_coeff(u32 i, const Elem& v);
  void trim();

  bool operator==(const UPoly& o) const { return k_ == o.k_ && c_ == o.c_; }

 private:
  Field k_ = nullptr;
  std::vector<Elem> c_;
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly operator*(const Elem& s, const UPoly& a);
UPoly monic(const UPoly& a);
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);  // b != 0
UPoly upoly_gcd(const UPoly& a, const UPoly& b);                 // monic; not both zero
Elem eval(const UPoly& f, const Elem& x);
UPoly derivative(const UPoly& f);
UPoly pow_mod(const UPoly& g, u128 e, const UPoly& f);
UPoly pow_p_mod(const UPoly& g, u32 times, const UPoly& f);  // g^(p^times) mod f
UPoly compose_shift(const UPoly& f, const Elem& a);          // f(x + a)

// Radical: product of the distinct irreducible factors, monic.
UPoly squarefree_part(const UPoly& f);
// degree -> number of irreducible factors of that degree (of the radical).
std::map<u32, u32> distinct_degree_profile(const UPoly& f);
// Monic irreducible factors of the radical (no multiplicities), sorted.
std::vector<UPoly> irreducible_factors(const UPoly& f);
// All roots of f in its own field, sorted.
std::vector<Elem> roots_in(const UPoly& f);
// Roots with multiplicities, in f's own field.
std::vector<std::pair<Elem, u32>> roots_with_multiplicity(const UPoly& f);
// Spec operation: embed coefficients into target (which must extend f's
// field in the standard tower) and return all roots there.
std::vector<Elem> roots_over(const UPoly& f, Field target);
UPoly map_coeffs(const UPoly& f, Field target);  // embed every coefficient

class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(Field k) : k_(k) {}
  Field field() const { return k_; }
  int deg_x() const { return (int)cx_.size() - 1; }
  int deg_y() const;
  bool is_zero() const { return cx_.empty(); }
  UPoly coeff_x(u32 i) const { return i < cx_.size() ? cx_[i] : UPoly(k_); }
  const std::vector<UPoly>& coeffs_x() const { return cx_; }
  void set_coeff_x(u32 i, const UPoly& c);
  void trim();
  UPoly eval_y(const Elem& v) const;  // polynomial in x
  UPoly eval_x(const Elem& v) const;  // polynomial in y
  Elem eval(const Elem& x, const Elem& y) const;
  BiPoly swap_vars() const;

  bool operator==(const BiPoly& o) const { return k_ == o.k_ && cx_ == o.cx_; }

 private:
  Field k_ = nullptr;
  std::vector<UPoly> cx_;  // cx_[i] multiplies x^i, a polynomial in y
};

BiPoly operator+(const BiPoly& a, const BiPoly& b);
BiPoly operator-(const BiPoly& a, const BiPoly& b);
BiPoly operator*(const BiPoly& a, const BiPoly& b);
BiPoly derivative_x(const BiPoly& f);
BiPoly derivative_y(const BiPoly& f);
// Sylvester resultant eliminating x; result is a polynomial in y.
// Exact: interpolation + univariate resultants when the field is large
// enough, fraction-free elimination otherwise.
UPoly resultant_x(const BiPoly& f, const BiPoly& g);
Elem resultant(const UPoly& f, const UPoly& g);  // univariate resultant
BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b);
UPoly content_x(const BiPoly& a);

// Homogeneous trivariate form of fixed degree d; dense over monomials
// X^a Y^b Z^c with a+b+c = d.
class Form {
 public:
  Form() = default;
  Form(Field k, u32 d);
  Field field() const { return k_; }
  u32 degree() const { return d_; }
  bool is_zero() const;
  Elem coeff(u32 a, u32 b) const;  // monomial X^a Y^b Z^(d-a-b)
  void set_coeff(u32 a, u32 b, const Elem& v);
  void add_coeff(u32 a, u32 b, const Elem& v);
  u32 monomial_count() const { return (d_ + 1) * (d_ + 2) / 2; }
  // enumeration helper: index <-> (a, b)
  std::pair<u32, u32> monomial(u32 idx) const;
  Elem coeff_at(u32 idx) const { return c_[idx]; }

  Elem evaluate(const Elem& x, const Elem& y, const Elem& z) const;
  std::string to_string() const;  // parser-compatible text

  bool operator==(const Form& o) const { return k_ == o.k_ && d_ == o.d_ && c_ == o.c_; }

 private:
  u32 idx(u32 a, u32 b) const;
  Field k_ = nullptr;
  u32 d_ = 0;
  std::vector<Elem> c_;
};

Form operator+(const Form& a, const Form& b);
Form operator*(const Elem& s, const Form& a);
Form form_mul(const Form& a, const Form& b);
Form map_coeffs(const Form& f, Field target);

// 3x3 matrix over a field, viewed in PGL_3 through canonicalize().
struct Mat3 {
  Field k = nullptr;
  std::vector<Elem> m;  // row-major, 9 entries

  static Mat3 identity(Field k);
  static Mat3 zero(Field k);
  Elem& at(u32 r, u32 c) { return m[3 * r + c]; }
  const Elem& at(u32 r, u32 c) const { return m[3 * r + c]; }
  bool operator==(const Mat3& o) const { return k == o.k && m == o.m; }
};

Mat3 mat_mul(const Mat3& a, const Mat3& b);
Elem det(const Mat3& a);
Mat3 mat_inverse(const Mat3& a);  // error if singular
Mat3 canonicalize(const Mat3& a);  // first nonzero entry (row-major) scaled to 1
Mat3 map_coeffs(const Mat3& a, Field target);
int mat_cmp(const Mat3& a, const Mat3& b);

// Substitute X_i := sum_j M[i][j] X_j, i.e. (F o M)(v) = F(M v) for column
// vectors v. The point map v -> A v carries {F=0} onto {substitute(F, A^-1)=0}.
Form substitute(const Form& f, const Mat3& m);
// Spec-facing action with the composition contract
// apply_linear(F, A*B) == apply_linear(apply_linear(F, B), A);
// implemented as substitute with the transpose.
Form apply_linear(const Form& f, const Mat3& a);
Form partial(const Form& f, int var);  // var: 0 = X, 1 = Y, 2 = Z
// F on chart var=1, as a BiPoly in the remaining two variables (x = first
// remaining, y = second, in X,Y,Z order).
BiPoly dehomogenize(const Form& f, int var);

// F evaluated along s*P0 + t*P1: the full degree-d binary form as
// coefficients of s^(d-i) t^i (i = 0..d).
std::vector<Elem> restrict_to_segment(const Form& f, const Elem p0[3], const Elem p1[3]);
// Spec operation: the dehomogenized restriction r(t) with the point of
// interest P0 at t = 0.
UPoly restrict_to_line(const Form& f, const Elem p0[3], const Elem p1[3]);

// nullopt unless g == s*f for a nonzero scalar s (returns s).
std::optional<Elem> proportional_scalar(const Form& f, const Form& g);

}  // namespace gp

#endif
