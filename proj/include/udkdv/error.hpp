#pragma once

#include <stdexcept>
#include <string>

namespace udkdv {

/// Malformed input: bad file contents, bad flag values, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its domain (e.g. the KdV step on a nonzero background).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace udkdv
