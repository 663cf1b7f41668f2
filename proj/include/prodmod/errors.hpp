#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prodmod {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), m_offset(offset) {}
  std::size_t offset() const { return m_offset; }

 private:
  std::size_t m_offset;
};

class DeltaInModalInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DeltaInInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncoherentOmega : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSimpleOmega : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificateRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownWorld : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prodmod
