#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace trialalloc {

/// An input violates a type invariant. Always carries the offending field path
/// (e.g. "treatment.pi", "margin.kind").
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field_path, const std::string& message)
      : std::invalid_argument(message), field_path_(std::move(field_path)) {}

  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::string field_path_;
};

/// Inputs are individually valid but the requested computation is undefined:
/// a null-boundary parameter leaves its domain, a design gap is zero, a
/// closed form is singular.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace trialalloc
