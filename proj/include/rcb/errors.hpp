#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace rcb {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: out-of-range ids, nonpositive weights, bad files.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidCycle : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation that needs a 2-vertex-connected graph gets
/// something else. Exactly one of the witness fields is set.
class NotBiconnected : public Error {
 public:
  enum class Reason { cut_vertex, disconnected, self_loop, too_small };

  NotBiconnected(Reason reason, int witness, const std::string& what)
      : Error(what), reason_(reason), witness_(witness) {}

  Reason reason() const { return reason_; }
  /// Cut vertex, a vertex of another component, or a self-loop edge id.
  int witness() const { return witness_; }

 private:
  Reason reason_;
  int witness_;
};

class NoRootedBasis : public Error {
 public:
  using Error::Error;
};

class NoPair : public Error {
 public:
  using Error::Error;
};

class NoCycle : public Error {
 public:
  using Error::Error;
};

/// The greedy sequence produced new-edge sets that are not an open ear
/// decomposition. Only a tie-breaking failure can cause this.
class InternalEarViolation : public Error {
 public:
  using Error::Error;
};

class SearchLimitExceeded : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotASpanningTree : public Error {
 public:
  using Error::Error;
};

class RootNotInTree : public Error {
 public:
  using Error::Error;
};

class InvalidEmbedding : public Error {
 public:
  using Error::Error;
};

class WrongDegree : public Error {
 public:
  using Error::Error;
};

/// Two tie-break handles from different contexts were compared.
class MixedContexts : public Error {
 public:
  using Error::Error;
};

class UnsortedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace rcb
