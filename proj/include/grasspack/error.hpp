#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace grasspack {

enum class Errc {
  InvalidInput,
  RankDeficient,
  NotPSD,
  RankExceeded,
  NumericalFailure,
  SingularBlock,
  InitFailure,
  ParseError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

/// Base exception for every failure raised by the library. The code lets
/// callers (the harness in particular) decide whether a trial is recoverable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// The draw budget ran out before N subspaces were accepted.
class InitFailure : public Error {
 public:
  InitFailure(std::size_t accepted, std::size_t draws)
      : Error(Errc::InitFailure, "draw budget of " + std::to_string(draws) +
                                     " exhausted after accepting " + std::to_string(accepted) +
                                     " subspaces"),
        accepted_(accepted) {}

  std::size_t accepted() const noexcept { return accepted_; }

 private:
  std::size_t accepted_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotPSD: return "NotPSD";
    case Errc::RankExceeded: return "RankExceeded";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::SingularBlock: return "SingularBlock";
    case Errc::InitFailure: return "InitFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace grasspack
