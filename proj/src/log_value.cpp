#include "prodmod/log_value.hpp"

#include <stdexcept>
#include <unordered_map>

#include "prodmod/errors.hpp"

namespace prodmod {

LogValue LogValue::zero() {
  LogValue v;
  v.m_zero = true;
  return v;
}

LogValue LogValue::pos(const Rational& x) {
  if (x < 0) throw std::invalid_argument("log coordinate must be nonnegative");
  LogValue v;
  v.m_log = x;
  v.m_log.canonicalize();
  return v;
}

std::string LogValue::print() const { return m_zero ? "zero" : "log:" + to_fraction(m_log); }

LogValue LogValue::parse(const std::string& text) {
  if (text == "zero") return zero();
  if (text.rfind("log:", 0) == 0) return pos(parse_rational(text.substr(4)));
  throw std::invalid_argument("not a log value: '" + text + "'");
}

std::string LogValue::display() const {
  if (m_zero) return "0";
  if (m_log == 0) return "1";
  return "exp2(-" + to_fraction(m_log) + ")";
}

std::strong_ordering operator<=>(const LogValue& a, const LogValue& b) {
  if (a.m_zero || b.m_zero) return (!a.m_zero) <=> (!b.m_zero);
  int c = cmp(b.m_log, a.m_log);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

LogValue strong_and(const LogValue& a, const LogValue& b) {
  if (a.is_zero() || b.is_zero()) return LogValue::zero();
  return LogValue::pos(a.log() + b.log());
}

LogValue residuum(const LogValue& a, const LogValue& b) {
  if (a.is_zero()) return LogValue::top();
  if (b.is_zero()) return LogValue::zero();
  Rational d = b.log() - a.log();
  return LogValue::pos(d > 0 ? d : Rational(0));
}

LogValue meet(const LogValue& a, const LogValue& b) { return a <= b ? a : b; }

LogValue join(const LogValue& a, const LogValue& b) { return a >= b ? a : b; }

LogValue delta(const LogValue& a) { return a.is_top() ? LogValue::top() : LogValue::zero(); }

LogValue power(const LogValue& a, const Rational& k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  if (k == 0) return LogValue::top();
  if (a.is_zero()) return a;
  return LogValue::pos(a.log() * k);
}

namespace {

struct Evaluator {
  const Valuation& v;
  std::unordered_map<const void*, LogValue> memo;

  LogValue run(const PropFormula& f) {
    if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
    LogValue r;
    switch (f.op()) {
      case POp::Var: {
        auto it = v.find(f.ext());
        if (it == v.end()) throw UnboundVariable("no value for " + f.ext().key());
        r = it->second;
        break;
      }
      case POp::Top: r = LogValue::top(); break;
      case POp::Bot: r = LogValue::zero(); break;
      case POp::Delta: r = delta(run(f.body())); break;
      case POp::StrongAnd: r = strong_and(run(f.left()), run(f.right())); break;
      case POp::Imp: r = residuum(run(f.left()), run(f.right())); break;
      case POp::WeakAnd: r = meet(run(f.left()), run(f.right())); break;
      case POp::WeakOr: r = join(run(f.left()), run(f.right())); break;
    }
    memo.emplace(f.identity(), r);
    return r;
  }
};

}  // namespace

LogValue eval_prop(const Valuation& v, const PropFormula& f) {
  Evaluator e{v, {}};
  return e.run(f);
}

}  // namespace prodmod
