#pragma once

#include <stdexcept>

namespace majsim {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator was asked for an unusable size (e.g. a cycle on two vertices).
class invalid_size_error : public error {
 public:
  using error::error;
};

/// An argument is outside its domain (probability, vertex index, ...).
class parameter_error : public error {
 public:
  using error::error;
};

/// Malformed external input: edge-list text, opinion strings.
class format_error : public error {
 public:
  using error::error;
};

/// The input graph is not connected.
class connectivity_error : public error {
 public:
  using error::error;
};

/// A pair of vertices required to be adjacent is not.
class adjacency_error : public error {
 public:
  using error::error;
};

/// The instance is too large for exhaustive enumeration.
class capacity_error : public error {
 public:
  using error::error;
};

}  // namespace majsim
