#include "cantor/exact/expression.hpp"

#include <cctype>

#include "cantor/error.hpp"

namespace cantor {

namespace {

struct Cursor {
  std::string s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  bool eat_word(std::string_view w) {
    if (s.compare(pos, w.size(), w) != 0) return false;
    pos += w.size();
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail_parse("unexpected character", where());
  }
  std::string where() const {
    return "at position " + std::to_string(pos) + " in '" + s + "'";
  }
  BigInt integer() {
    std::size_t start = pos;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (start == pos) fail_parse("expected number", where());
    return BigInt(s.substr(start, pos - start));
  }
  /// Text up to the parenthesis matching one just consumed.
  std::string enclosed() {
    std::size_t start = pos;
    int depth = 1;
    while (!done()) {
      char c = s[pos++];
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) return s.substr(start, pos - 1 - start);
    }
    fail_parse("unbalanced parentheses", where());
  }
};

long small_exponent(const Rational& e, const std::string& where) {
  if (e.get_den() != 1 || abs(e.get_num()) > 64) fail_parse("exponent must be a small integer", where);
  return e.get_num().get_si();
}

std::uint64_t to_u64(const BigInt& n) {
  if (sgn(n) < 0 || n > BigInt("18446744073709551615")) fail_precondition("radicand too large");
  return std::stoull(n.get_str());
}

AlgebraicReal exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) fail_precondition("negative radicand", to_string(q));
  // sqrt(p/r) = sqrt(p*r)/r
  BigInt n = q.get_num() * q.get_den();
  auto [s, m] = split_square(n);
  Rational scale = make_rational(s, q.get_den());
  if (m == 1 || sgn(m) == 0) return AlgebraicReal(scale * Rational(m));
  auto field = NumberField::make_largest_root({BigInt(-m), BigInt(0), BigInt(1)});
  return AlgebraicReal::generator(field) * AlgebraicReal(scale);
}

AlgebraicReal exact_cbrt(const Rational& q) {
  if (sgn(q) == 0) return AlgebraicReal(0);
  int sign = sgn(q);
  Rational aq = abs(q);
  // cbrt(p/r) = cbrt(p*r^2)/r
  BigInt n = aq.get_num() * aq.get_den() * aq.get_den();
  BigInt k = 1, a = 1, b = 1;
  for (auto [p, e] : factorize(to_u64(n))) {
    BigInt bp(std::to_string(p));
    for (unsigned i = 0; i < e / 3; ++i) k *= bp;
    if (e % 3 == 1) a *= bp;
    if (e % 3 == 2) b *= bp;
  }
  Rational scale = make_rational(sign * k, aq.get_den());
  if (a == 1 && b == 1) return AlgebraicReal(scale);
  if (b <= a) {
    auto field = NumberField::make(std::vector<BigInt>{BigInt(-(a * b * b)), 0, 0, 1}, 0);
    return AlgebraicReal::generator(field) * AlgebraicReal(scale);
  }
  // cbrt(a b^2) = alpha^2 / a with alpha = cbrt(a^2 b), keeping the smaller radicand.
  auto field = NumberField::make(std::vector<BigInt>{BigInt(-(a * a * b)), 0, 0, 1}, 0);
  AlgebraicReal alpha = AlgebraicReal::generator(field);
  return alpha * alpha * AlgebraicReal(scale / Rational(a));
}

class RealParser {
 public:
  RealParser(std::string text, FieldPtr context) : context_(std::move(context)) { c_.s = std::move(text); }

  AlgebraicReal run() {
    if (c_.s.empty()) fail_parse("empty expression");
    AlgebraicReal v = expr();
    if (!c_.done()) fail_parse("trailing input", c_.where());
    return v;
  }

 private:
  AlgebraicReal expr() {
    AlgebraicReal v = term();
    for (;;) {
      if (c_.eat('+')) {
        v = v + term();
      } else if (c_.eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  AlgebraicReal term() {
    AlgebraicReal v = unary();
    for (;;) {
      if (c_.eat('*')) {
        v = v * unary();
      } else if (c_.eat('/')) {
        AlgebraicReal d = unary();
        if (d.is_zero()) fail_precondition("division by zero", c_.where());
        v = v / d;
      } else {
        return v;
      }
    }
  }

  AlgebraicReal unary() {
    if (c_.eat('-')) return -unary();
    if (c_.eat('+')) return unary();
    return power();
  }

  AlgebraicReal power() {
    AlgebraicReal base = atom();
    if (!c_.eat('^')) return base;
    AlgebraicReal e = unary();
    if (!e.is_rational()) fail_parse("exponent must be a small integer", c_.where());
    long k = small_exponent(e.rational_value(), c_.where());
    if (k < 0 && base.is_zero()) fail_precondition("division by zero", c_.where());
    return base.pow(k);
  }

  Rational rational_argument() {
    c_.expect('(');
    AlgebraicReal v = expr();
    c_.expect(')');
    if (!v.is_rational()) fail_parse("radicand must be rational", c_.where());
    return v.rational_value();
  }

  AlgebraicReal atom() {
    char ch = c_.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) return AlgebraicReal(Rational(c_.integer()));
    if (c_.eat('(')) {
      AlgebraicReal v = expr();
      c_.expect(')');
      return v;
    }
    if (c_.eat_word("sqrt")) return exact_sqrt(rational_argument());
    if (c_.eat_word("cbrt")) return exact_cbrt(rational_argument());
    if (c_.eat_word("cos(")) {
      std::string inner = c_.enclosed();
      if (inner != "2*pi/7" && inner != "2pi/7") fail_parse("unsupported cosine argument", inner);
      return AlgebraicReal::generator(heptagonal_field()) * AlgebraicReal(make_rational(1, 2));
    }
    if (c_.eat_word("root(")) return AlgebraicReal::generator(parse_field(c_.enclosed()));
    if (c_.eat('a')) {
      if (!context_) fail_parse("generator 'a' needs a field context", c_.where());
      return AlgebraicReal::generator(context_);
    }
    fail_parse("unexpected character", c_.where());
  }

  Cursor c_;
  FieldPtr context_;
};

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string text) { c_.s = std::move(text); }

  Polynomial run() {
    if (c_.s.empty()) fail_parse("empty polynomial");
    Polynomial p = expr();
    if (!c_.done()) fail_parse("trailing input", c_.where());
    return p;
  }

 private:
  static Polynomial constant(const BigInt& v) { return Polynomial({Rational(v)}); }

  Polynomial expr() {
    Polynomial v = term();
    for (;;) {
      if (c_.eat('+')) {
        v = v + term();
      } else if (c_.eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Polynomial term() {
    Polynomial v = unary();
    while (c_.eat('*')) v = v * unary();
    return v;
  }

  Polynomial unary() {
    if (c_.eat('-')) return constant(-1) * unary();
    if (c_.eat('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!c_.eat('^')) return base;
    BigInt e = c_.integer();
    if (e > 16) fail_parse("exponent too large", c_.where());
    Polynomial out = constant(1);
    for (long i = 0; i < e.get_si(); ++i) out = out * base;
    return out;
  }

  Polynomial atom() {
    char ch = c_.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) return constant(c_.integer());
    if (c_.eat('x')) return Polynomial({Rational(0), Rational(1)});
    if (c_.eat('(')) {
      Polynomial v = expr();
      c_.expect(')');
      return v;
    }
    fail_parse("unexpected character", c_.where());
  }

  Cursor c_;
};

}  // namespace

std::string normalize_input(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char ch = static_cast<unsigned char>(text[i]);
    // U+2212 MINUS SIGN in UTF-8.
    if (ch == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out += '-';
      i += 2;
      continue;
    }
    if (std::isspace(ch)) continue;
    out += static_cast<char>(ch);
  }
  return out;
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  parts.push_back(cur);
  for (auto& p : parts) {
    std::size_t b = p.find_first_not_of(" \t\n");
    std::size_t e = p.find_last_not_of(" \t\n");
    p = b == std::string::npos ? std::string() : p.substr(b, e - b + 1);
  }
  return parts;
}

AlgebraicReal parse_real(std::string_view text, const FieldPtr& context) {
  return RealParser(normalize_input(text), context).run();
}

std::vector<BigInt> parse_integer_polynomial(std::string_view text) {
  Polynomial p = PolynomialParser(normalize_input(text)).run();
  std::vector<BigInt> out;
  for (const auto& c : p.coefficients()) {
    if (c.get_den() != 1) fail_parse("polynomial coefficients must be integers");
    out.push_back(c.get_num());
  }
  return out;
}

FieldPtr parse_field(std::string_view text) {
  std::string s = normalize_input(text);
  std::size_t at = s.find('@');
  auto coeffs = parse_integer_polynomial(s.substr(0, at));
  if (coeffs.size() < 3 || coeffs.size() > 4) fail_precondition("unsupported field", "degree must be 2 or 3");
  if (coeffs.back() != 1) fail_precondition("unsupported field", "polynomial must be monic");
  if (at == std::string::npos) return NumberField::make_largest_root(std::move(coeffs));
  Cursor c;
  c.s = s.substr(at + 1);
  BigInt idx = c.integer();
  if (!c.done()) fail_parse("bad root index", s);
  return NumberField::make(std::move(coeffs), idx.get_ui());
}

FieldPtr heptagonal_field() {
  static const FieldPtr f =
      NumberField::make_near({-1, -2, 1, 1}, RationalInterval{make_rational(6, 5), make_rational(13, 10)});
  return f;
}

std::string to_expression(const AlgebraicReal& x) {
  if (x.is_rational()) return "(" + to_string(x.rational_value()) + ")";
  std::string gen = "root(" + x.field()->to_string() + "@" + std::to_string(x.field()->root_index()) + ")";
  std::string body = x.to_string();
  std::string out;
  for (char c : body) {
    if (c == 'a') {
      out += gen;
    } else {
      out += c;
    }
  }
  return "(" + out + ")";
}

}  // namespace cantor
