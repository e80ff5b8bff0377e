#ifndef GP_GF_HPP
#define GP_GF_HPP

// Arithmetic in a compatible tower of finite fields.
//
// Two kinds of field live behind the same element type:
//   * standard fields F_{p^m}: power basis over F_p, deterministic modulus
//     (the least monic irreducible of degree m in coefficient-index order);
//   * quotient fields base[y]/(q(y)) for monic q over any already-built
//     field. These let exact computations climb extensions that are too
//     large to enumerate.
//
// Elements are flattened F_p coefficient vectors of fixed length equal to
// the total degree over F_p. Descriptors are interned in a global registry,
// so field identity is pointer identity. All operations are pure;
// descriptors are immutable apart from internal memoized caches.

#include <optional>
#include <string>
#include <vector>

#include "gp/common.hpp"

namespace gp {

class FieldImpl;
using Field = const FieldImpl*;

struct Elem {
  Field f = nullptr;
  SmallVec c;

  bool operator==(const Elem& o) const { return f == o.f && c == o.c; }
  bool operator!=(const Elem& o) const { return !(*this == o); }
};

// Canonical order: degree-major lexicographic on coefficients
// (equals numeric order of sum c_i p^i). Elements must share a field.
int cmp(const Elem& a, const Elem& b);
struct ElemLess {
  bool operator()(const Elem& a, const Elem& b) const { return cmp(a, b) < 0; }
};

class FieldImpl {
 public:
  u64 p() const { return p_; }
  u32 degree() const { return deg_; }        // total degree over F_p
  bool is_standard() const { return base_ == nullptr; }
  Field base() const { return base_; }
  u32 rel_degree() const { return rel_deg_; }  // degree over base (== deg_ for standard)
  // Standard fields: monic modulus over F_p, length degree()+1, low-to-high.
  const std::vector<u32>& modulus() const { return mod_; }
  // Quotient fields: monic modulus over base(), length rel_degree()+1.
  const std::vector<Elem>& rel_modulus() const { return rel_mod_; }

  bool size_fits_u64() const { return size_ != 0; }
  u64 size_u64() const;  // p^degree; error when it does not fit

  Elem zero() const;
  Elem one() const;
  Elem from_int(u64 v) const;  // v mod p, as a constant
  Elem gen() const;            // class of the adjoined variable
  Elem from_coeffs(const SmallVec& flat) const;
  // Quotient fields: build an element from rel_degree() base-field coefficients.
  Elem from_base_coeffs(const std::vector<Elem>& cs) const;
  // Coefficients of x over base() (quotient fields), low-to-high, length rel_degree().
  std::vector<Elem> base_coeffs(const Elem& x) const;

  bool is_zero(const Elem& x) const;
  bool is_one(const Elem& x) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;  // error on zero
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, u128 e) const;
  Elem frob(const Elem& a) const { return pow_p(a, 1); }  // x -> x^p
  Elem pow_p(const Elem& a, u32 k) const;                 // x -> x^{p^k}

  std::string to_string(const Elem& x) const;  // "w^2+w", "1", "0"; ints in prime fields
  std::string label() const;                   // "2^4", "3", quotient: "2^4[y]/..."

  // Positional index sum c_i p^i; enumeration order for small fields.
  // Requires size_fits_u64().
  u64 index_of(const Elem& x) const;
  Elem of_index(u64 v) const;

 private:
  friend struct FieldBuilder;
  friend Elem embed(const Elem& x, Field target);
  friend std::optional<Elem> try_project(const Elem& x, Field sub);
  FieldImpl() = default;

  struct EmbedData;  // per-subfield root + linear algebra, built lazily
  const EmbedData& embed_data(u32 d) const;

  u64 p_ = 0;
  u32 deg_ = 1;
  u32 rel_deg_ = 1;
  Field base_ = nullptr;        // null for standard fields
  std::vector<u32> mod_;        // standard only
  std::vector<Elem> rel_mod_;   // quotient only
  u64 size_ = 0;                // p^deg if it fits in u64 (and < 2^63), else 0

  // reduction rows: x^{deg+i} mod modulus, flattened, i = 0..deg-2 (standard)
  std::vector<SmallVec> red_;
  std::vector<std::vector<Elem>> rel_red_;  // quotient analogue over base

  // log/antilog tables for small standard fields (size <= table cap)
  std::vector<u32> log_, alog_;
  u64 table_n_ = 0;  // group order when tables present, else 0

  struct Lazy;
  Lazy* lazy_ = nullptr;  // guarded caches (embedding roots)
};

// Deterministic standard field F_{p^m}. Errors: p not prime, m = 0,
// p^m beyond machine bounds (total degree capped; see gf.cpp).
Field gf(u64 p, u32 m);

// Same, with an explicit modulus (low-to-high, monic, irreducible over F_p).
Field gf_with_modulus(u64 p, const std::vector<u32>& modulus);

// base[y]/(q). q monic with coefficients in base; irreducibility is the
// caller's contract (zero divisors surface as Error(internal) in inv).
Field quotient_field(Field base, const std::vector<Elem>& monic_mod);

// Subfield embedding F_{p^m} -> F_{p^n}, m | n, both standard.
// Ring-homomorphic and consistent across chains.
Elem embed(const Elem& x, Field target);
// Inverse of embed on its image; nullopt when x is outside the subfield copy.
std::optional<Elem> try_project(const Elem& x, Field sub);

// Least n with x^{p^n} = x, i.e. the degree over F_p of the subfield
// generated by x. Works in any field kind.
u32 element_degree(const Elem& x);

u64 element_order(const Elem& x);  // error on zero
std::vector<Elem> roots_of_unity(Field f, u64 l);  // all x with x^l = 1; error if p | l
Elem least_primitive_element(Field f);

// Convenience operators (same-field asserts in debug builds).
inline Elem operator+(const Elem& a, const Elem& b) { return a.f->add(a, b); }
inline Elem operator-(const Elem& a, const Elem& b) { return a.f->sub(a, b); }
inline Elem operator-(const Elem& a) { return a.f->neg(a); }
inline Elem operator*(const Elem& a, const Elem& b) { return a.f->mul(a, b); }

}  // namespace gp

#endif
