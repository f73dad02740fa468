#pragma once

#include <stdexcept>
#include <string>

namespace phaseid {

/// Malformed or unreadable input (files, user-supplied data).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is well-formed but the analysis cannot produce a meaningful value
/// (e.g. rank-deficient features, no transitions at all).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phaseid
