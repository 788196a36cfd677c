#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frobundle {

using Index = std::size_t;
inline constexpr Index npos = static_cast<Index>(-1);

enum class ErrorKind {
  InvalidTable,
  CodMismatch,
  DomMismatch,
  BaseMismatch,
  NotAssociative,
  NoUnit,
  NoInverse,
  BadComposability,
  BadIdentity,
  BadInverse,
  UnitLawFail,
  AssocLawFail,
  AnchorMismatch,
  AlgebraMismatch,
  NotInvariant,
  NotSurjective,
  NotFreeTransitive,
  NotEquivariant,
  CocycleFail,
  NotOverBase,
  FrobeniusFail,
  FamilyTooLarge,
  InternalLaw,
  ParseError,
  BoundsExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::CodMismatch: return "CodMismatch";
    case ErrorKind::DomMismatch: return "DomMismatch";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoUnit: return "NoUnit";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::BadComposability: return "BadComposability";
    case ErrorKind::BadIdentity: return "BadIdentity";
    case ErrorKind::BadInverse: return "BadInverse";
    case ErrorKind::UnitLawFail: return "UnitLawFail";
    case ErrorKind::AssocLawFail: return "AssocLawFail";
    case ErrorKind::AnchorMismatch: return "AnchorMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotFreeTransitive: return "NotFreeTransitive";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::CocycleFail: return "CocycleFail";
    case ErrorKind::NotOverBase: return "NotOverBase";
    case ErrorKind::FrobeniusFail: return "FrobeniusFail";
    case ErrorKind::FamilyTooLarge: return "FamilyTooLarge";
    case ErrorKind::InternalLaw: return "InternalLaw";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BoundsExceeded: return "BoundsExceeded";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a kind and,
/// where one exists, the indices of a violating element, pair or triple.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<Index> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<Index>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<Index> witness_;
};

}  // namespace frobundle
