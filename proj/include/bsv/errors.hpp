#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bsv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wavelength outside a material's tabulated range, or band outside the grid.
class RangeError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public NumericalError {
 public:
  NoRootError(const std::string& what, double lower, double upper)
      : NumericalError(what), lower_(lower), upper_(upper) {}
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

// Spectrum has no half-maximum crossing inside the grid.
class EdgeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Objects derived from different Schmidt spectra were combined.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UndefinedObservableError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

struct FieldError {
  std::string path;
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<FieldError> errors);
  ConfigError(const std::string& path, const std::string& message)
      : ConfigError(std::vector<FieldError>{FieldError{path, message}}) {}
  const std::vector<FieldError>& errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

}  // namespace bsv
