#include "gp/parse.hpp"

#include <cctype>
#include <map>

#include "internal.hpp"

namespace gp {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void err(const std::string& msg, size_t at) const {
    size_t line = 1, col = 1;
    for (size_t j = 0; j < at && j < s.size(); j++) {
      if (s[j] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
    }
    fail(errc::parse_error,
         msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")");
  }
  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      i++;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  u64 uint(const char* what) {
    skip_ws();
    size_t at = i;
    if (i >= s.size() || !std::isdigit((unsigned char)s[i])) err(std::string("expected ") + what, at);
    u64 v = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) {
      v = v * 10 + (u64)(s[i] - '0');
      if (v > (1ULL << 62)) err("number too large", at);
      i++;
    }
    return v;
  }
};

// Multivariate accumulator used while parsing; degree checked afterwards.
using MPoly = std::map<std::array<u32, 3>, Elem>;

MPoly mp_const(Field k, const Elem& e) {
  MPoly r;
  if (!k->is_zero(e)) r[{0, 0, 0}] = e;
  return r;
}

MPoly mp_add(Field k, const MPoly& a, const MPoly& b, bool negate_b) {
  MPoly r = a;
  for (auto& [m, c] : b) {
    Elem v = negate_b ? k->neg(c) : c;
    auto it = r.find(m);
    if (it == r.end()) {
      r[m] = v;
    } else {
      it->second = k->add(it->second, v);
      if (k->is_zero(it->second)) r.erase(it);
    }
  }
  return r;
}

MPoly mp_mul(Field k, const MPoly& a, const MPoly& b, Cursor& cur, size_t at) {
  MPoly r;
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b) {
      std::array<u32, 3> m = {ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      if (m[0] + m[1] + m[2] > 512) cur.err("monomial degree too large", at);
      Elem v = k->mul(ca, cb);
      auto it = r.find(m);
      if (it == r.end()) {
        if (!k->is_zero(v)) r[m] = v;
      } else {
        it->second = k->add(it->second, v);
        if (k->is_zero(it->second)) r.erase(it);
      }
    }
  return r;
}

class FormParser {
 public:
  FormParser(const std::string& text, Field k) : cur_{text}, k_(k) {}

  MPoly parse() {
    MPoly r = expr();
    if (!cur_.done()) cur_.err("unexpected trailing input", cur_.i);
    return r;
  }

 private:
  MPoly expr() {
    bool neg = false;
    if (cur_.eat('-')) neg = true;
    else cur_.eat('+');
    MPoly r = term();
    if (neg) r = mp_add(k_, MPoly{}, r, true);
    while (true) {
      if (cur_.eat('+')) {
        r = mp_add(k_, r, term(), false);
      } else if (cur_.eat('-')) {
        r = mp_add(k_, r, term(), true);
      } else {
        break;
      }
    }
    return r;
  }

  MPoly term() {
    size_t at = cur_.i;
    MPoly r = factor();
    while (true) {
      char c = cur_.peek();
      if (c == '*') {
        cur_.eat('*');
        r = mp_mul(k_, r, factor(), cur_, at);
      } else if (c == '(' || c == 'w' || c == 'X' || c == 'Y' || c == 'Z' || c == 'x' ||
                 c == 'y' || c == 'z' || std::isdigit((unsigned char)c)) {
        // implicit product, e.g. "2X" or "w Y"
        r = mp_mul(k_, r, factor(), cur_, at);
      } else {
        break;
      }
    }
    return r;
  }

  MPoly factor() {
    MPoly base = primary();
    if (cur_.peek() == '^') {
      size_t at = cur_.i;
      cur_.eat('^');
      u64 e = cur_.uint("exponent");
      if (e > 512) cur_.err("exponent too large", at);
      MPoly r = mp_const(k_, k_->one());
      for (u64 i = 0; i < e; i++) r = mp_mul(k_, r, base, cur_, at);
      return r;
    }
    return base;
  }

  MPoly primary() {
    char c = cur_.peek();
    size_t at = cur_.i;
    if (c == '(') {
      cur_.eat('(');
      MPoly r = expr();
      if (!cur_.eat(')')) cur_.err("expected ')'", cur_.i);
      return r;
    }
    if (c == 'X' || c == 'x') {
      cur_.i++;
      MPoly r;
      r[{1, 0, 0}] = k_->one();
      return r;
    }
    if (c == 'Y' || c == 'y') {
      cur_.i++;
      MPoly r;
      r[{0, 1, 0}] = k_->one();
      return r;
    }
    if (c == 'Z' || c == 'z') {
      cur_.i++;
      MPoly r;
      r[{0, 0, 1}] = k_->one();
      return r;
    }
    if (c == 'w') {
      cur_.i++;
      return mp_const(k_, k_->gen());
    }
    if (std::isdigit((unsigned char)c)) {
      u64 v = cur_.uint("number");
      return mp_const(k_, k_->from_int(v));
    }
    cur_.err("expected monomial, coefficient, or '('", at);
  }

  Cursor cur_;
  Field k_;
};

std::string monomial_name(const std::array<u32, 3>& m) {
  std::string s;
  auto app = [&](const char* v, u32 e) {
    if (!e) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  app("X", m[0]);
  app("Y", m[1]);
  app("Z", m[2]);
  return s.empty() ? "1" : s;
}

}  // namespace

Form parse_form(const std::string& text, Field k) {
  FormParser p(text, k);
  MPoly mp = p.parse();
  if (mp.empty()) fail(errc::parse_error, "form is identically zero");
  u32 d = 0;
  for (auto& [m, c] : mp) d = std::max(d, m[0] + m[1] + m[2]);
  for (auto& [m, c] : mp) {
    u32 t = m[0] + m[1] + m[2];
    if (t != d)
      fail(errc::parse_error, "non-homogeneous input: monomial " + monomial_name(m) +
                                  " has degree " + std::to_string(t) +
                                  " but the form has degree " + std::to_string(d));
  }
  Form f(k, d);
  for (auto& [m, c] : mp) f.set_coeff(m[0], m[1], c);
  return f;
}

Elem parse_element(const std::string& text, Field k) {
  FormParser p(text, k);
  MPoly mp = p.parse();
  for (auto& [m, c] : mp)
    if (m[0] + m[1] + m[2] != 0)
      fail(errc::parse_error, "expected a field element, found variable " + monomial_name(m));
  if (mp.empty()) return k->zero();
  return mp.begin()->second;
}

std::array<Elem, 3> parse_point(const std::string& text, Field k) {
  std::array<Elem, 3> out = {k->zero(), k->zero(), k->zero()};
  size_t start = 0;
  int part = 0;
  for (size_t i = 0; i <= text.size(); i++) {
    if (i == text.size() || text[i] == ':') {
      if (part > 2) fail(errc::parse_error, "point needs exactly three coordinates");
      out[(size_t)part] = parse_element(text.substr(start, i - start), k);
      part++;
      start = i + 1;
    }
  }
  if (part != 3) fail(errc::parse_error, "point needs exactly three coordinates");
  if (k->is_zero(out[0]) && k->is_zero(out[1]) && k->is_zero(out[2]))
    fail(errc::parse_error, "point coordinates are all zero");
  return out;
}

FieldSpec parse_field_spec(const std::string& text) {
  FieldSpec spec;
  Cursor cur{text};
  bool saw_p = false, saw_m = false;
  while (!cur.done()) {
    cur.skip_ws();
    size_t at = cur.i;
    std::string key;
    while (cur.i < text.size() && (std::isalpha((unsigned char)text[cur.i]))) key += text[cur.i++];
    if (!cur.eat('=')) cur.err("expected '=' after key", cur.i);
    if (key == "p") {
      spec.p = cur.uint("prime");
      saw_p = true;
    } else if (key == "m") {
      spec.m = (u32)cur.uint("degree");
      saw_m = true;
    } else if (key == "mod") {
      spec.modulus.clear();
      spec.modulus.push_back((u32)cur.uint("coefficient"));
      while (cur.peek() == ',') {
        size_t save = cur.i;
        cur.eat(',');
        // a following key=... means the list ended
        if (std::isalpha((unsigned char)cur.peek())) {
          cur.i = save;
          break;
        }
        spec.modulus.push_back((u32)cur.uint("coefficient"));
      }
    } else {
      cur.err("unknown field-spec key '" + key + "'", at);
    }
    if (!cur.eat(',')) break;
  }
  if (!saw_p || !saw_m) fail(errc::parse_error, "field spec needs p=... and m=...");
  if (!spec.modulus.empty() && spec.modulus.size() != spec.m + 1)
    fail(errc::parse_error, "modulus must list m+1 coefficients, low to high");
  return spec;
}

Field field_from_spec(const FieldSpec& spec) {
  if (spec.modulus.empty()) return gf(spec.p, spec.m);
  // validate, then use the canonical model; elements will be transported
  (void)gf_with_modulus(spec.p, spec.modulus);
  return gf(spec.p, spec.m);
}

CurveInput parse_curve_file(const std::string& contents) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : contents) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  std::vector<std::string> content;
  for (auto& l : lines) {
    size_t i = 0;
    while (i < l.size() && std::isspace((unsigned char)l[i])) i++;
    if (i >= l.size() || l[i] == '#') continue;
    content.push_back(l);
  }
  if (content.size() < 2)
    fail(errc::parse_error, "curve file needs a field spec line and a form line");
  FieldSpec spec = parse_field_spec(content[0]);
  Field k = gf(spec.p, spec.m);
  CurveInput ci;
  ci.field = k;
  if (spec.modulus.empty()) {
    ci.form = parse_form(content[1], k);
    return ci;
  }
  // parse over the custom model, then transport through the least-root iso
  Field custom = gf_with_modulus(spec.p, spec.modulus);
  Form f = parse_form(content[1], custom);
  std::vector<Elem> lifted;
  for (u32 c : custom->modulus()) lifted.push_back(k->from_int(c));
  std::vector<Elem> roots = detail::roots_in_field(lifted, k);
  if (roots.empty()) fail(errc::internal, "custom modulus has no root in the canonical field");
  Elem r = roots.front();
  Form out(k, f.degree());
  for (u32 i = 0; i < f.monomial_count(); i++) {
    auto [a, b] = f.monomial(i);
    Elem c = f.coeff_at(i);
    // evaluate the polynomial form of c at r
    Elem v = k->zero();
    Elem rp = k->one();
    for (u32 j = 0; j < custom->degree(); j++) {
      if (c.c[j]) v = k->add(v, k->mul(rp, k->from_int(c.c[j])));
      if (j + 1 < custom->degree()) rp = k->mul(rp, r);
    }
    out.set_coeff(a, b, v);
  }
  ci.form = out;
  return ci;
}

}  // namespace gp
