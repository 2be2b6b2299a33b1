#pragma once

#include <stdexcept>

namespace refgame {

// Input data violates an invariant: malformed cells, duplicate words,
// degenerate pairs, role mismatches and the like.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace refgame
