#pragma once

// Shared recursive-descent parser for the modal and propositional surface
// syntax. The Builder decides which constructs are legal.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "prodmod/errors.hpp"

namespace prodmod::grammar {

enum class Tok { End, Ident, Zero, One, LParen, RParen, Box, Dia, Tilde, Bang, Iff, Imp, Or, And, Amp };

enum class Unary { Box, Dia, Neg, Delta };
enum class Binary { Iff, Imp, Or, And, Amp };

// Binding strength used by both printers; larger binds tighter.
inline constexpr int kPrecIff = 1;
inline constexpr int kPrecImp = 2;
inline constexpr int kPrecOr = 3;
inline constexpr int kPrecAnd = 4;
inline constexpr int kPrecAmp = 5;
inline constexpr int kPrecUnary = 6;
inline constexpr int kPrecAtom = 7;

class Lexer {
 public:
  explicit Lexer(std::string_view text) : m_text(text) { advance(); }

  Tok tok() const { return m_tok; }
  std::size_t offset() const { return m_start; }
  const std::string& ident() const { return m_ident; }

  void advance() {
    while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) ++m_pos;
    m_start = m_pos;
    if (m_pos >= m_text.size()) {
      m_tok = Tok::End;
      return;
    }
    auto rest = m_text.substr(m_pos);
    auto take = [&](Tok t, std::size_t n) {
      m_tok = t;
      m_pos += n;
    };
    if (rest.starts_with("<->")) return take(Tok::Iff, 3);
    if (rest.starts_with("<>")) return take(Tok::Dia, 2);
    if (rest.starts_with("[]")) return take(Tok::Box, 2);
    if (rest.starts_with("->")) return take(Tok::Imp, 2);
    if (rest.starts_with("\\/")) return take(Tok::Or, 2);
    if (rest.starts_with("/\\")) return take(Tok::And, 2);
    char c = rest.front();
    switch (c) {
      case '&': return take(Tok::Amp, 1);
      case '~': return take(Tok::Tilde, 1);
      case '!': return take(Tok::Bang, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      default: break;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t end = m_pos + 1;
      while (end < m_text.size() &&
             (std::isalnum(static_cast<unsigned char>(m_text[end])) || m_text[end] == '_'))
        ++end;
      m_ident = std::string(m_text.substr(m_pos, end - m_pos));
      m_tok = Tok::Ident;
      m_pos = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = m_pos + 1;
      while (end < m_text.size() && std::isalnum(static_cast<unsigned char>(m_text[end]))) ++end;
      if (end == m_pos + 1 && (c == '0' || c == '1')) return take(c == '0' ? Tok::Zero : Tok::One, 1);
      throw SyntaxError("only the constants 0 and 1 are allowed", m_pos);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", m_pos);
  }

 private:
  std::string_view m_text;
  std::size_t m_pos = 0;
  std::size_t m_start = 0;
  Tok m_tok = Tok::End;
  std::string m_ident;
};

template <class Builder>
class Parser {
 public:
  using Node = typename Builder::Node;

  Parser(std::string_view text, Builder& b) : m_lex(text), m_b(b) {}

  Node parse_all() {
    Node n = parse_iff();
    if (m_lex.tok() != Tok::End) throw SyntaxError("unexpected trailing input", m_lex.offset());
    return n;
  }

 private:
  Node parse_iff() {
    Node l = parse_imp();
    while (m_lex.tok() == Tok::Iff) {
      m_lex.advance();
      Node r = parse_imp();
      l = m_b.binary(Binary::Iff, l, r);
    }
    return l;
  }

  Node parse_imp() {
    Node l = parse_or();
    if (m_lex.tok() != Tok::Imp) return l;
    m_lex.advance();
    Node r = parse_imp();
    return m_b.binary(Binary::Imp, l, r);
  }

  Node parse_or() {
    Node l = parse_and();
    while (m_lex.tok() == Tok::Or) {
      m_lex.advance();
      l = m_b.binary(Binary::Or, l, parse_and());
    }
    return l;
  }

  Node parse_and() {
    Node l = parse_amp();
    while (m_lex.tok() == Tok::And) {
      m_lex.advance();
      l = m_b.binary(Binary::And, l, parse_amp());
    }
    return l;
  }

  Node parse_amp() {
    Node l = parse_unary();
    while (m_lex.tok() == Tok::Amp) {
      m_lex.advance();
      l = m_b.binary(Binary::Amp, l, parse_unary());
    }
    return l;
  }

  Node parse_unary() {
    std::size_t at = m_lex.offset();
    Unary u;
    switch (m_lex.tok()) {
      case Tok::Box: u = Unary::Box; break;
      case Tok::Dia: u = Unary::Dia; break;
      case Tok::Tilde: u = Unary::Neg; break;
      case Tok::Bang: u = Unary::Delta; break;
      default: return parse_primary();
    }
    m_lex.advance();
    Node sub = parse_unary();
    return m_b.unary(u, sub, at);
  }

  Node parse_primary() {
    std::size_t at = m_lex.offset();
    switch (m_lex.tok()) {
      case Tok::Ident: {
        std::string name = m_lex.ident();
        m_lex.advance();
        return m_b.var(name, at);
      }
      case Tok::Zero: m_lex.advance(); return m_b.bot();
      case Tok::One: m_lex.advance(); return m_b.top();
      case Tok::LParen: {
        m_lex.advance();
        Node n = parse_iff();
        if (m_lex.tok() != Tok::RParen) throw SyntaxError("expected ')'", m_lex.offset());
        m_lex.advance();
        return n;
      }
      case Tok::End: throw SyntaxError("unexpected end of input", at);
      default: throw SyntaxError("expected a formula", at);
    }
  }

  Lexer m_lex;
  Builder& m_b;
};

inline std::string parenthesize(std::string s, int prec, int min_prec) {
  if (prec < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace prodmod::grammar
