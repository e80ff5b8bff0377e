#ifndef GP_COMMON_HPP
#define GP_COMMON_HPP

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

namespace gp {

using u32 = uint32_t;
using u64 = uint64_t;
using u128 = unsigned __int128;

// Error codes shared with the C API (values must stay stable).
enum class errc : int {
  ok = 0,
  invalid_argument = 1,
  parse_error = 2,
  singular_curve = 3,
  bounds_exceeded = 4,
  internal = 5,
  field_mismatch = 6,
  not_smooth_certified = 7,
  unknown_name = 8,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

// Coefficient vector with inline storage for the common small-degree case.
// Holds residues mod p, low degree first, fixed length = field degree.
class SmallVec {
  static constexpr unsigned kInline = 12;

 public:
  SmallVec() = default;
  explicit SmallVec(unsigned n) { resize_zero(n); }
  SmallVec(const SmallVec& o) { assign(o.data(), o.n_); }
  SmallVec(SmallVec&& o) noexcept {
    if (o.heap_) {
      heap_ = o.heap_;
      cap_ = o.cap_;
      o.heap_ = nullptr;
      o.cap_ = 0;
    } else {
      std::memcpy(buf_, o.buf_, sizeof(u32) * o.n_);
    }
    n_ = o.n_;
    o.n_ = 0;
  }
  SmallVec& operator=(const SmallVec& o) {
    if (this != &o) assign(o.data(), o.n_);
    return *this;
  }
  SmallVec& operator=(SmallVec&& o) noexcept {
    if (this == &o) return *this;
    if (heap_) delete[] heap_;
    heap_ = nullptr;
    cap_ = 0;
    if (o.heap_) {
      heap_ = o.heap_;
      cap_ = o.cap_;
      o.heap_ = nullptr;
      o.cap_ = 0;
    } else {
      std::memcpy(buf_, o.buf_, sizeof(u32) * o.n_);
    }
    n_ = o.n_;
    o.n_ = 0;
    return *this;
  }
  ~SmallVec() { delete[] heap_; }

  unsigned size() const { return n_; }
  u32* data() { return heap_ ? heap_ : buf_; }
  const u32* data() const { return heap_ ? heap_ : buf_; }
  u32& operator[](unsigned i) { return data()[i]; }
  u32 operator[](unsigned i) const { return data()[i]; }

  void resize_zero(unsigned n) {
    if (n > kInline && n > cap_) {
      delete[] heap_;
      heap_ = new u32[n];
      cap_ = n;
    }
    n_ = n;
    std::memset(data(), 0, sizeof(u32) * n);
  }

  bool operator==(const SmallVec& o) const {
    if (n_ != o.n_) return false;
    return std::memcmp(data(), o.data(), sizeof(u32) * n_) == 0;
  }
  bool operator!=(const SmallVec& o) const { return !(*this == o); }

 private:
  void assign(const u32* src, unsigned n) {
    if (n > kInline && n > cap_) {
      delete[] heap_;
      heap_ = new u32[n];
      cap_ = n;
    }
    n_ = n;
    std::memcpy(data(), src, sizeof(u32) * n);
  }

  u32 buf_[kInline] = {};
  u32* heap_ = nullptr;
  unsigned cap_ = 0;
  unsigned n_ = 0;
};

// splitmix64; used to derive deterministic seeds from structural data.
inline u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic RNG for randomized-but-reproducible algorithms
// (equal-degree splitting, sampling). Not for cryptography.
class Rng {
 public:
  explicit Rng(u64 seed) : s_(seed ? seed : 0x6a09e667f3bcc909ULL) {}
  u64 next() {
    s_ = mix64(s_ + 0x9e3779b97f4a7c15ULL);
    return s_;
  }
  u64 below(u64 n) { return n ? next() % n : 0; }

 private:
  u64 s_;
};

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b);
bool is_prime_u64(u64 n);
// Distinct prime factors of n >= 2, ascending.
void prime_factors_u64(u64 n, u64 out[64], int* count);

}  // namespace gp

#endif
