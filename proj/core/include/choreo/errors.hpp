#pragma once

#include <stdexcept>
#include <string>

namespace choreo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A location tried to read a located value it does not own (or an absent
/// one). Always a programming error in the choreography, never a protocol
/// state.
class OwnershipError : public Error {
 public:
  using Error::Error;
};

/// Invalid backend configuration: duplicate/unknown locations, bad ports.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A wire payload failed to encode or decode.
class CodecError : public Error {
 public:
  using Error::Error;
};

/// The transport gave up (retry budget exhausted, fabric torn down, ...).
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent use of the effect machinery itself, e.g. a handler returned
/// a result of the wrong type. Indicates a bug, not a runtime condition.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace choreo
