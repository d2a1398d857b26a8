#pragma once

#include <stdexcept>
#include <string>

namespace qbc {

/// An argument lies outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A key buffer cannot cover a requested one-time-pad length.
class InsufficientKey : public std::runtime_error {
 public:
  InsufficientKey(std::size_t requested, std::size_t available)
      : std::runtime_error("insufficient key: requested " + std::to_string(requested) +
                           " bits, " + std::to_string(available) + " available"),
        requested_(requested),
        available_(available) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t requested_;
  std::size_t available_;
};

/// A caller broke an operation's precondition (wrong frame kind, missing message, ...).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qbc
