#pragma once

#include <stdexcept>

namespace tqeval {

// Raised when an iterative routine exhausts its iteration budget without
// meeting its tolerance. Distinct from std::domain_error: the inputs were
// valid, the computation failed. Maps to its own CLI exit code.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (CSV / JSON / TOML). Messages carry the offending
// file, line or column name.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tqeval
