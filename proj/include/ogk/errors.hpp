#pragma once

#include <stdexcept>
#include <string>

namespace ogk {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Conjugate bracket grew past 1e30 without crossing the target slope:
// the supremum sup{xy - Phi(x)} is +infinity (Phi grows at most linearly).
class UnboundedConjugate : public Error {
public:
  using Error::Error;
};

// A ratio sup (Delta2 or psi-tilde style) keeps growing over the top
// decade of the sample grid; the input is not Delta2-regular.
class DivergentRatio : public Error {
public:
  using Error::Error;
};

// The Amemiya scan was monotone over the whole k-range.
class NoMinimum : public Error {
public:
  using Error::Error;
};

class UnknownUnit : public Error {
public:
  using Error::Error;
};

class NotComposable : public Error {
public:
  using Error::Error;
};

class FiberMismatch : public Error {
public:
  using Error::Error;
};

class NotGroupBundle : public Error {
public:
  using Error::Error;
};

class NotProbability : public Error {
public:
  using Error::Error;
};

class BoundViolated : public Error {
public:
  using Error::Error;
};

class FiltrationInvalid : public Error {
public:
  using Error::Error;
};

// Bad CLI/file configuration; maps to process exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace ogk
