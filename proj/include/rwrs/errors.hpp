#pragma once

#include <stdexcept>
#include <string>

namespace rwrs {

/// Invalid arguments or configuration supplied by the caller.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine could not produce a trustworthy result.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Internal wiring defect, e.g. a scenery lookup for a site that was never sampled.
class DefectError : public std::logic_error {
 public:
  explicit DefectError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rwrs
