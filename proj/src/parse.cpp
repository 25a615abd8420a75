#include <cctype>

#include "c2qf/parse.hpp"
#include "parser_internal.hpp"
#include "c2qf/tower.hpp"

namespace c2qf {

void Reader::skip_ws() {
  while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
}

bool Reader::at_end() {
  skip_ws();
  return pos_ >= s_.size();
}

char Reader::peek() {
  skip_ws();
  return pos_ < s_.size() ? s_[pos_] : '\0';
}

char Reader::peek_at(std::size_t offset) {
  skip_ws();
  std::size_t p = pos_;
  for (std::size_t k = 0; k < offset; ++k) {
    ++p;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
  }
  return p < s_.size() ? s_[p] : '\0';
}

bool Reader::accept(char c) {
  if (peek() == c) {
    ++pos_;
    return true;
  }
  return false;
}

bool Reader::accept(std::string_view word) {
  skip_ws();
  if (s_.substr(pos_, word.size()) == word) {
    pos_ += word.size();
    return true;
  }
  return false;
}

void Reader::expect(char c) {
  if (!accept(c)) error(std::string("'") + c + "'");
}

bool Reader::at_identifier() {
  const char c = peek();
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool Reader::at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

std::string Reader::identifier() {
  if (!at_identifier()) error("identifier");
  const std::size_t start = pos_;
  while (pos_ < s_.size() &&
         (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
    ++pos_;
  }
  return std::string(s_.substr(start, pos_ - start));
}

long long Reader::integer() {
  if (!at_digit()) error("integer");
  long long v = 0;
  while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
    if (v > 100000000) error_at(pos_, ErrorCode::SyntaxError, "smaller integer", "integer too large");
    v = v * 10 + (s_[pos_] - '0');
    ++pos_;
  }
  return v;
}

void Reader::error(const std::string& expected) {
  skip_ws();
  std::string found = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
  error_at(pos_, ErrorCode::SyntaxError, expected,
           "expected " + expected + " at position " + std::to_string(pos_) + ", found " + found);
}

void Reader::error_at(std::size_t pos, ErrorCode code, const std::string& expected,
                      const std::string& message) {
  throw ParseError(code, pos, expected, message);
}

void expect_end(Reader& r) {
  if (!r.at_end()) r.error("end of input");
}

// ------------------------------------------------------------------ fields

Field read_field(Reader& r) {
  if (!r.accept("GF")) r.error("'GF'");
  r.expect('(');
  const std::size_t at = r.pos();
  long long k = 0;
  const long long n = r.integer();
  if (r.accept('^')) {
    if (n != 2) r.error_at(at, ErrorCode::SyntaxError, "2", "field base must be 2");
    k = r.integer();
  } else {
    long long q = n;
    while (q > 1 && q % 2 == 0) {
      q /= 2;
      ++k;
    }
    if (q != 1 || k == 0) {
      r.error_at(at, ErrorCode::SyntaxError, "a power of 2", "GF(q) needs q a power of 2");
    }
  }
  r.expect(')');
  Field f;
  try {
    f = Field::gf2k(static_cast<int>(k));
  } catch (const Error& e) {
    r.error_at(at, e.code(), "k between 1 and 16", e.what());
  }
  // Residue fields print as GF(q)[Y]/(g).
  while (r.peek() == '[') {
    r.expect('[');
    const std::size_t vpos = r.pos();
    std::string name = r.identifier();
    r.expect(']');
    r.expect('/');
    r.expect('(');
    const std::size_t ppos = r.pos();
    int depth = 0;
    while (!r.at_end() && !(depth == 0 && r.peek() == ')')) {
      if (r.peek() == '(') ++depth;
      if (r.peek() == ')') --depth;
      r.set_pos(r.pos() + 1);
    }
    const std::string_view body = r.text().substr(ppos, r.pos() - ppos);
    r.expect(')');
    try {
      const Poly g = parse_polynomial(f, name, body);
      if (g.degree() < 2 || !is_irreducible(g)) {
        r.error_at(ppos, ErrorCode::SyntaxError, "irreducible polynomial of degree >= 2", "bad residue modulus");
      }
      f = residue_extension(f, g.monic(), name);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      r.error_at(vpos, ErrorCode::SyntaxError, "residue field", e.what());
    }
  }
  while (r.peek() == '(') {
    r.expect('(');
    if (r.accept('(')) {
      const std::size_t vpos = r.pos();
      std::string name = r.identifier();
      r.expect(')');
      r.expect(':');
      const long long prec = r.integer();
      r.expect(')');
      try {
        f = Field::laurent(f, name, static_cast<int>(prec));
      } catch (const Error& e) {
        r.error_at(vpos, ErrorCode::SyntaxError, "fresh variable name", e.what());
      }
    } else {
      // GF(2)(s,t) is shorthand for GF(2)(s)(t).
      do {
        const std::size_t vpos = r.pos();
        std::string name = r.identifier();
        try {
          f = Field::rational(f, name);
        } catch (const Error& e) {
          r.error_at(vpos, ErrorCode::SyntaxError, "fresh variable name", e.what());
        }
      } while (r.accept(','));
      r.expect(')');
    }
  }
  return f;
}

// ---------------------------------------------------------------- elements

namespace {

Element read_sum(Reader& r, Field field, bool scalar_mode);

Element big_o(Reader& r, Field field) {
  r.expect('(');
  const std::size_t vpos = r.pos();
  std::string name = r.identifier();
  long long exp = 1;
  if (r.accept('^')) {
    const bool neg = r.accept('-');
    exp = r.integer();
    if (neg) exp = -exp;
  }
  r.expect(')');
  for (Field f = field; f.valid() && !f.is_finite(); f = f.base()) {
    if (f.var() == name) {
      if (!f.is_laurent()) break;
      return Element::laurent_big_o(f, static_cast<int>(exp)).embed(field);
    }
  }
  r.error_at(vpos, ErrorCode::WrongField, "a Laurent variable",
             "O(" + name + "^n) needs a Laurent variable named " + name);
}

Element read_atom(Reader& r, Field field) {
  if (r.at_digit()) {
    const long long v = r.integer();
    return field.from_int(v % 2);
  }
  if (r.accept('(')) {
    Element e = read_sum(r, field, false);
    r.expect(')');
    return e;
  }
  if (r.at_identifier()) {
    const std::size_t at = r.pos();
    std::string name = r.identifier();
    if (name == "O" && r.peek() == '(') return big_o(r, field);
    try {
      return field.variable(name);
    } catch (const Error& e) {
      r.error_at(at, ErrorCode::UnknownVariable, "a variable of " + field.to_string(), e.what());
    }
  }
  r.error("number, variable or '('");
}

Element read_power(Reader& r, Field field) {
  const std::size_t at = r.pos();
  Element base = read_atom(r, field);
  if (r.accept('^')) {
    const bool neg = r.accept('-');
    long long e = r.integer();
    if (neg) e = -e;
    try {
      return pow(base, e);
    } catch (const Error& err) {
      r.error_at(at, err.code(), "invertible base", err.what());
    }
  }
  return base;
}

Element read_term(Reader& r, Field field, bool scalar_mode) {
  Element acc = read_power(r, field);
  for (;;) {
    const char c = r.peek();
    if (c == '*') {
      if (scalar_mode && r.peek_at(1) == '(') return acc;
      r.expect('*');
      acc = acc * read_power(r, field);
    } else if (c == '/') {
      r.expect('/');
      const std::size_t at = r.pos();
      Element d = read_power(r, field);
      try {
        acc = acc / d;
      } catch (const Error& err) {
        r.error_at(at, err.code(), "nonzero divisor", err.what());
      }
    } else {
      return acc;
    }
  }
}

Element read_sum(Reader& r, Field field, bool scalar_mode) {
  if (!r.accept('-')) r.accept('+');
  Element acc = read_term(r, field, scalar_mode);
  for (;;) {
    const char c = r.peek();
    if (c != '+' && c != '-') return acc;
    r.expect(c);
    acc = acc + read_term(r, field, scalar_mode);
  }
}

}  // namespace

Element read_element(Reader& r, Field field, bool scalar_mode) {
  return read_sum(r, field, scalar_mode);
}

Field parse_field(std::string_view text) {
  Reader r(text);
  Field f = read_field(r);
  expect_end(r);
  return f;
}

Element parse_element(Field field, std::string_view text) {
  Reader r(text);
  Element e = read_element(r, field);
  expect_end(r);
  return e;
}

Poly parse_polynomial(Field field, const std::string& var, std::string_view text) {
  Field k = Field::rational(field, var);
  Element e = parse_element(k, text);
  if (e.den().degree() != 0) {
    throw ParseError(ErrorCode::SyntaxError, 0, "polynomial",
                     "'" + std::string(text) + "' is not a polynomial in " + var);
  }
  return e.num();
}

}  // namespace c2qf
