#pragma once

#include <stdexcept>
#include <string>

namespace linclust {

/// Malformed or inconsistent input data (unknown labels, bad numbers, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request that cannot be carried out, e.g. a strata objective
/// on an undirected graph or a brute-force search above the size cap.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace linclust
