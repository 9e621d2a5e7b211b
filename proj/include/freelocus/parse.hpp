#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "freelocus/freepoly.hpp"

namespace freelocus {

struct SyntaxError : std::runtime_error {
  std::size_t position;
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct UnknownVariable : std::runtime_error {
  std::size_t position;
  UnknownVariable(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

// --- expressions ------------------------------------------------------------------

/// Abstract syntax: rationals, the imaginary unit, variables x1..xg and y,
/// postfix adjoint, +, -, products, integer powers, division by constants,
/// and bracketed matrix layout.
struct Expression {
  enum class Kind { Number, Imag, Var, Add, Sub, Mul, Div, Neg, Pow, Adjoint, Matrix };
  Kind kind = Kind::Number;
  Rat number;                 // Number
  Letter var{1, false};       // Var
  long exponent = 0;          // Pow
  std::vector<Expression> child;           // operands
  std::vector<std::vector<Expression>> mat;  // Matrix rows

  static Expression num(Rat r) {
    Expression e;
    e.kind = Kind::Number;
    e.number = std::move(r);
    return e;
  }
  static Expression binary(Kind k, Expression a, Expression b) {
    Expression e;
    e.kind = k;
    e.child.push_back(std::move(a));
    e.child.push_back(std::move(b));
    return e;
  }
  static Expression unary(Kind k, Expression a) {
    Expression e;
    e.kind = k;
    e.child.push_back(std::move(a));
    return e;
  }
};

namespace detail {

struct Token {
  enum class Type { Integer, Imag, Var, Sym, End };
  Type type = Type::End;
  std::string text;
  Letter var{1, false};
  std::size_t pos = 0;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.type = Token::Type::Integer;
      t.text = s.substr(i, j - i);
      i = j;
    } else if (c == 'i' || c == 'y' || c == 'x') {
      if (c == 'i') {
        t.type = Token::Type::Imag;
        ++i;
      } else if (c == 'y') {
        t.type = Token::Type::Var;
        t.var = Letter{0, false};
        ++i;
      } else {
        std::size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) throw UnknownVariable("variable x needs an index", i);
        unsigned long idx = std::stoul(s.substr(i + 1, j - i - 1));
        if (idx == 0) throw UnknownVariable("variable indices start at 1", i);
        t.type = Token::Type::Var;
        t.var = Letter{static_cast<std::uint32_t>(idx), false};
        i = j;
      }
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      throw UnknownVariable(std::string("unknown identifier '") + c + "'", i);
    } else if (std::string("+-*/^'()[],;").find(c) != std::string::npos) {
      t.type = Token::Type::Sym;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.type = Token::Type::End;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Expression parse() {
    Expression e = expr();
    if (!at_end()) throw SyntaxError("trailing input", cur().pos);
    return e;
  }

 private:
  const Token& cur() const { return toks_[k_]; }
  bool at_end() const { return cur().type == Token::Type::End; }
  bool is_sym(const char* s) const {
    return cur().type == Token::Type::Sym && cur().text == s;
  }
  void expect(const char* s) {
    if (!is_sym(s)) throw SyntaxError(std::string("expected '") + s + "'", cur().pos);
    ++k_;
  }

  bool starts_atom() const {
    switch (cur().type) {
      case Token::Type::Integer:
      case Token::Type::Imag:
      case Token::Type::Var:
        return true;
      case Token::Type::Sym:
        return cur().text == "(" || cur().text == "[";
      default:
        return false;
    }
  }

  Expression expr() {
    Expression e = term();
    while (is_sym("+") || is_sym("-")) {
      bool plus = cur().text == "+";
      ++k_;
      Expression rhs = term();
      e = Expression::binary(plus ? Expression::Kind::Add : Expression::Kind::Sub,
                             std::move(e), std::move(rhs));
    }
    return e;
  }

  Expression term() {
    Expression e = factor();
    for (;;) {
      if (is_sym("*")) {
        ++k_;
        e = Expression::binary(Expression::Kind::Mul, std::move(e), factor());
      } else if (is_sym("/")) {
        ++k_;
        e = Expression::binary(Expression::Kind::Div, std::move(e), factor());
      } else if (starts_atom()) {  // juxtaposition
        e = Expression::binary(Expression::Kind::Mul, std::move(e), factor());
      } else {
        break;
      }
    }
    return e;
  }

  Expression factor() {
    if (is_sym("-")) {
      ++k_;
      return Expression::unary(Expression::Kind::Neg, factor());
    }
    return postfix();
  }

  Expression postfix() {
    Expression e = atom();
    for (;;) {
      if (is_sym("'")) {
        ++k_;
        e = Expression::unary(Expression::Kind::Adjoint, std::move(e));
      } else if (is_sym("^")) {
        std::size_t at = cur().pos;
        ++k_;
        if (cur().type != Token::Type::Integer)
          throw SyntaxError("integer exponent expected", at);
        long ex = std::stol(cur().text);
        ++k_;
        Expression p = Expression::unary(Expression::Kind::Pow, std::move(e));
        p.exponent = ex;
        e = std::move(p);
      } else {
        break;
      }
    }
    return e;
  }

  Expression atom() {
    switch (cur().type) {
      case Token::Type::Integer: {
        Rat r(cur().text);
        r.canonicalize();
        ++k_;
        return Expression::num(std::move(r));
      }
      case Token::Type::Imag: {
        ++k_;
        Expression e;
        e.kind = Expression::Kind::Imag;
        return e;
      }
      case Token::Type::Var: {
        Expression e;
        e.kind = Expression::Kind::Var;
        e.var = cur().var;
        ++k_;
        return e;
      }
      case Token::Type::Sym:
        if (cur().text == "(") {
          ++k_;
          Expression e = expr();
          expect(")");
          return e;
        }
        if (cur().text == "[") {
          ++k_;
          Expression e;
          e.kind = Expression::Kind::Matrix;
          e.mat.push_back({});
          e.mat.back().push_back(expr());
          while (is_sym(",") || is_sym(";")) {
            bool newrow = cur().text == ";";
            ++k_;
            if (newrow) e.mat.push_back({});
            e.mat.back().push_back(expr());
          }
          expect("]");
          return e;
        }
        throw SyntaxError("unexpected symbol '" + cur().text + "'", cur().pos);
      default:
        throw SyntaxError("unexpected end of input", cur().pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

inline void scan_alphabet(const Expression& e, std::uint32_t& g, bool& stars, bool& slack) {
  if (e.kind == Expression::Kind::Var) {
    if (e.var.index == 0)
      slack = true;
    else
      g = std::max(g, e.var.index);
  }
  if (e.kind == Expression::Kind::Adjoint) stars = true;
  for (const auto& c : e.child) scan_alphabet(c, g, stars, slack);
  for (const auto& row : e.mat)
    for (const auto& c : row) scan_alphabet(c, g, stars, slack);
}

inline MatrixPoly lower(const Expression& e, const Alphabet& alph) {
  using K = Expression::Kind;
  switch (e.kind) {
    case K::Number:
      return MatrixPoly::scalar_constant(Scalar(e.number), alph);
    case K::Imag:
      return MatrixPoly::scalar_constant(Scalar::unit_i(), alph);
    case K::Var:
      return MatrixPoly::variable(e.var, alph);
    case K::Add:
      return lower(e.child[0], alph) + lower(e.child[1], alph);
    case K::Sub:
      return lower(e.child[0], alph) - lower(e.child[1], alph);
    case K::Mul:
      return lower(e.child[0], alph) * lower(e.child[1], alph);
    case K::Div: {
      MatrixPoly num = lower(e.child[0], alph);
      MatrixPoly den = lower(e.child[1], alph);
      if (den.rows() != 1 || den.cols() != 1 || !den.is_constant())
        throw SyntaxError("division only by constant scalars", 0);
      Scalar c = den.constant_term()(0, 0);
      if (c.is_zero()) throw SyntaxError("division by zero", 0);
      return num.scaled(c.inv());
    }
    case K::Neg:
      return -lower(e.child[0], alph);
    case K::Pow: {
      if (e.exponent < 0) throw SyntaxError("negative powers are not polynomials", 0);
      MatrixPoly base = lower(e.child[0], alph);
      MatrixPoly acc = MatrixPoly::identity(base.rows(), alph);
      for (long k = 0; k < e.exponent; ++k) acc = acc * base;
      return acc;
    }
    case K::Adjoint:
      return lower(e.child[0], alph).adjoint().with_alphabet(alph);
    case K::Matrix: {
      std::size_t rows = e.mat.size(), cols = e.mat[0].size();
      for (const auto& row : e.mat)
        if (row.size() != cols) throw SyntaxError("ragged matrix literal", 0);
      MatrixPoly out(alph, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          MatrixPoly entry = lower(e.mat[i][j], alph);
          if (entry.rows() != 1 || entry.cols() != 1)
            throw SyntaxError("matrix entries must be scalar expressions", 0);
          for (const auto& [w, c] : entry.terms()) {
            Mat<Scalar> big(rows, cols);
            big(i, j) = c(0, 0);
            out.add_term(w, std::move(big));
          }
        }
      return out;
    }
  }
  throw SyntaxError("malformed expression", 0);
}

}  // namespace detail

inline Expression parse_expression(const std::string& text) {
  return detail::Parser(text).parse();
}

/// Parse several polynomial strings into one shared alphabet (maximal variable
/// index, involutive/slack context joined across all inputs).
inline std::vector<MatrixPoly> parse_polys(const std::vector<std::string>& texts) {
  std::vector<Expression> asts;
  std::uint32_t g = 0;
  bool stars = false, slack = false;
  for (const auto& t : texts) {
    asts.push_back(parse_expression(t));
    detail::scan_alphabet(asts.back(), g, stars, slack);
  }
  if (g == 0) g = 1;
  Alphabet alph{g, slack ? Ctx::Slack : (stars ? Ctx::Involutive : Ctx::Analytic)};
  std::vector<MatrixPoly> out;
  for (const auto& a : asts) out.push_back(detail::lower(a, alph));
  return out;
}

inline MatrixPoly parse_poly(const std::string& text) { return parse_polys({text})[0]; }

// --- canonical printing ---------------------------------------------------------------

namespace detail {

inline bool scalar_prints_negative(const Scalar& s) {
  if (s.is_real()) return sgn(s.re) < 0;
  if (rat_is_zero(s.re)) return sgn(s.im) < 0;
  return false;
}

inline std::string coeff_str(const Scalar& s) {
  if (s.is_real()) return rat_str(s.re);
  if (rat_is_zero(s.re)) {
    if (s.im == 1) return "i";
    if (s.im == -1) return "-i";
    return rat_str(s.im) + "i";
  }
  std::string im = s.im == 1 ? "i" : (s.im == -1 ? "-i" : rat_str(s.im) + "i");
  std::string sep = scalar_prints_negative(Scalar(s.im)) ? "" : "+";
  return "(" + rat_str(s.re) + sep + im + ")";
}

inline std::string word_str(const Word& w) {
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    if (!out.empty()) out += "*";
    out += ls[i].str();
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::string scalar_entry_str(const MatrixPoly& f, std::size_t r, std::size_t c) {
  std::string out;
  bool first = true;
  for (const auto& [w, coefs] : f.terms()) {
    Scalar coef = coefs(r, c);
    if (coef.is_zero()) continue;
    bool neg = scalar_prints_negative(coef);
    Scalar mag = neg ? -coef : coef;
    std::string part;
    if (w.empty()) {
      part = coeff_str(mag);
    } else if (mag.is_one()) {
      part = word_str(w);
    } else {
      part = coeff_str(mag) + " " + word_str(w);
    }
    if (first) {
      out = (neg ? "-" : "") + part;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + part;
    }
  }
  return first ? "0" : out;
}

}  // namespace detail

/// Canonical text form: graded-lex term order, explicit '*' between letters,
/// '^' for runs, postfix adjoint, matrix rows separated by ';'.  parse is a
/// left inverse of print.
inline std::string print_poly(const MatrixPoly& f) {
  if (f.rows() == 1 && f.cols() == 1) return detail::scalar_entry_str(f, 0, 0);
  std::string out = "[";
  for (std::size_t i = 0; i < f.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (j) out += ", ";
      out += detail::scalar_entry_str(f, i, j);
    }
  }
  return out + "]";
}

}  // namespace freelocus
