#include <fstream>
#include <sstream>
#include <stdexcept>

#include "prodmod/decision.hpp"
#include "prodmod/errors.hpp"

namespace prodmod {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Problem parse_problem(std::string_view text) {
  Problem p;
  bool have_conclusion = false, have_logic = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("problem line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected `key: value`");
    std::string key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
    auto formula = [&] {
      try {
        return parse(value);
      } catch (const SyntaxError& e) {
        fail(e.what());
      } catch (const DeltaInModalInput& e) {
        fail(e.what());
      }
      throw std::logic_error("unreachable");
    };
    if (key == "logic") {
      if (have_logic) fail("duplicate logic line");
      if (value == "crisp")
        p.logic = Logic::Crisp;
      else if (value == "valued")
        p.logic = Logic::Valued;
      else
        fail("logic must be crisp or valued");
      have_logic = true;
    } else if (key == "premise") {
      p.premises.push_back(formula());
    } else if (key == "conclusion") {
      if (have_conclusion) fail("more than one conclusion");
      p.conclusion = formula();
      have_conclusion = true;
    } else {
      fail("unknown key " + key);
    }
  }
  if (!have_conclusion) throw std::invalid_argument("problem: missing conclusion");
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace prodmod
