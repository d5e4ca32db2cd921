#pragma once

#include <stdexcept>
#include <string>

namespace subindep {

/// Malformed input: out-of-range element, non-closed subset, signature mismatch.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size bound was exceeded.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The requested construction does not exist as a finite object.
class UnsupportedError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace subindep
