#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lieab {

enum class ErrorKind {
  UnsupportedType,
  InvalidNode,
  InvalidMatrix,
  NoCoroot,
  NotAffine,
  NotFinite,
  HeightCutoffExceeded,
  NotBiconvex,
  NotDominant,
  NonDemazureState,
  RejectedWord,
  OffsetOverflow,
  ExtensionFailed,
  EmbeddingInconsistent,
  IoError,
  InternalError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::InvalidNode: return "InvalidNode";
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::NoCoroot: return "NoCoroot";
    case ErrorKind::NotAffine: return "NotAffine";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::HeightCutoffExceeded: return "HeightCutoffExceeded";
    case ErrorKind::NotBiconvex: return "NotBiconvex";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::NonDemazureState: return "NonDemazureState";
    case ErrorKind::RejectedWord: return "RejectedWord";
    case ErrorKind::OffsetOverflow: return "OffsetOverflow";
    case ErrorKind::ExtensionFailed: return "ExtensionFailed";
    case ErrorKind::EmbeddingInconsistent: return "EmbeddingInconsistent";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind; the
/// verification driver records it verbatim in FAILED report rows.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lieab
