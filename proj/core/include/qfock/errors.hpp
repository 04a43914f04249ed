#ifndef QFOCK_ERRORS_HPP
#define QFOCK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfock {

/// Base class for all toolkit errors. The CLI maps these to structured
/// JSON on stderr with exit code 2 (domain) or 1 (usage/parse).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// Raised when an operation leaves its mathematical domain, e.g. a kernel
/// evaluation for a test function with sup-norm >= 1/2.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class OverflowError : public Error {
public:
  explicit OverflowError(const std::string& what) : Error(what) {}
};

class UnmappedSupport : public Error {
public:
  explicit UnmappedSupport(const std::string& what) : Error(what) {}
};

class TailNotContracting : public Error {
public:
  explicit TailNotContracting(const std::string& what) : Error(what) {}
};

class ConvergenceFailure : public Error {
public:
  explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

class PreconditionFailed : public Error {
public:
  explicit PreconditionFailed(const std::string& what) : Error(what) {}
};

}  // namespace qfock

#endif
