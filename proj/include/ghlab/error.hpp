#pragma once

#include <stdexcept>
#include <string>

namespace ghlab {

/// Failure categories surfaced by the library.  Tests match on the kind,
/// the message is for humans.
enum class ErrorKind {
  InvalidArgument,
  BlockMismatch,
  IndexOutOfRange,
  DuplicateIndex,
  ShapeMismatch,
  NotHomogeneous,
  DependentPair,
  DegreeMismatch,
  DegenerateSample,
  LogPowerOverflow,
  BothZero,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), m_kind(kind) {}

  ErrorKind kind() const { return m_kind; }

private:
  ErrorKind m_kind;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BlockMismatch: return "BlockMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DuplicateIndex: return "DuplicateIndex";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::DependentPair: return "DependentPair";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::LogPowerOverflow: return "LogPowerOverflow";
    case ErrorKind::BothZero: return "BothZero";
  }
  return "Unknown";
}

}  // namespace ghlab
