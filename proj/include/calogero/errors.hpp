#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace calogero {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration hits a singular manifold of the potential or of the
/// coordinate transforms. `term` names the offending piece.
class SingularConfiguration : public Error {
 public:
  SingularConfiguration(std::string term, const std::string& what)
      : Error(what), term_(std::move(term)) {}
  const std::string& term() const { return term_; }

 private:
  std::string term_;
};

/// The square-root argument of the energy formula is not positive.
class InfeasibleState : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Model validation failure; carries every violated condition.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace calogero
