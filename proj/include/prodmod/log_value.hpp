#pragma once

#include <compare>
#include <map>
#include <string>

#include "prodmod/prop_formula.hpp"
#include "prodmod/rational.hpp"

namespace prodmod {

// Truth value of the standard product algebra in log coordinates: Zero is 0,
// Pos(x) stands for 2^-x, so Pos(0) is 1 and strong conjunction adds.
class LogValue {
 public:
  LogValue() = default;  // top
  static LogValue zero();
  static LogValue top() { return LogValue(); }
  static LogValue pos(const Rational& x);

  bool is_zero() const { return m_zero; }
  bool is_top() const { return !m_zero && m_log == 0; }
  // Only meaningful when !is_zero().
  const Rational& log() const { return m_log; }

  std::string print() const;
  // Inverse of print(): "zero" or "log:a/b".
  static LogValue parse(const std::string& text);
  // Exact value 2^-x as text, e.g. "exp2(-3/2)", or "0".
  std::string display() const;

  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.m_zero == b.m_zero && (a.m_zero || a.m_log == b.m_log);
  }
  // Truth order.
  friend std::strong_ordering operator<=>(const LogValue& a, const LogValue& b);

 private:
  bool m_zero = false;
  Rational m_log = 0;
};

LogValue strong_and(const LogValue& a, const LogValue& b);
LogValue residuum(const LogValue& a, const LogValue& b);
LogValue meet(const LogValue& a, const LogValue& b);
LogValue join(const LogValue& a, const LogValue& b);
LogValue delta(const LogValue& a);
LogValue power(const LogValue& a, const Rational& k);

using Valuation = std::map<ExtVar, LogValue>;

// Throws UnboundVariable when f mentions a variable outside v.
LogValue eval_prop(const Valuation& v, const PropFormula& f);

}  // namespace prodmod
