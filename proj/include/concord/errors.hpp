#pragma once

#include <stdexcept>
#include <string>

namespace concord {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad space, alternative outside a domain, trivial
/// stakeholder set where a non-trivial one is required, and so on.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A value reached a combiner that does not know it (table universe,
/// boolean combiners fed non-boolean values, product overflow).
class DomainMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// A configured size cap was exceeded. The question was not answered.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The search ran out of time. Never to be read as "inconsistent".
class Indeterminate : public Error {
 public:
  using Error::Error;
};

}  // namespace concord
