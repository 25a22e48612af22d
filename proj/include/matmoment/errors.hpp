#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace matmoment {

/// Machine-readable error codes mirrored into CLI error objects.
enum class ErrorCode {
  NonSquare,
  AsymmetricInput,
  ConvergenceFailure,
  InsufficientMoments,
  DegreeTooHigh,
  DimensionMismatch,
  InsufficientTerms,
  NoRecurrenceFound,
  InconsistentRoots,
  ComplexRoots,
  RepeatedRoots,
  IllConditioned,
  DegenerateNodes,
  ParseError,
  SchemaError,
  DimensionError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InsufficientMoments: return "InsufficientMoments";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InsufficientTerms: return "InsufficientTerms";
    case ErrorCode::NoRecurrenceFound: return "NoRecurrenceFound";
    case ErrorCode::InconsistentRoots: return "InconsistentRoots";
    case ErrorCode::ComplexRoots: return "ComplexRoots";
    case ErrorCode::RepeatedRoots: return "RepeatedRoots";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DegenerateNodes: return "DegenerateNodes";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DimensionError: return "DimensionError";
  }
  return "Unknown";
}

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NonSquareError : public Error {
 public:
  explicit NonSquareError(const std::string& msg) : Error(ErrorCode::NonSquare, msg) {}
};

class AsymmetricInputError : public Error {
 public:
  AsymmetricInputError(double defect, double threshold)
      : Error(ErrorCode::AsymmetricInput,
              "asymmetry defect " + std::to_string(defect) + " exceeds threshold " +
                  std::to_string(threshold)),
        defect_(defect) {}

  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class ConvergenceFailureError : public Error {
 public:
  explicit ConvergenceFailureError(const std::string& msg)
      : Error(ErrorCode::ConvergenceFailure, msg) {}
};

class InsufficientMomentsError : public Error {
 public:
  explicit InsufficientMomentsError(const std::string& msg)
      : Error(ErrorCode::InsufficientMoments, msg) {}
};

class DegreeTooHighError : public Error {
 public:
  explicit DegreeTooHighError(const std::string& msg) : Error(ErrorCode::DegreeTooHigh, msg) {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& msg)
      : Error(ErrorCode::DimensionMismatch, msg) {}
};

class InsufficientTermsError : public Error {
 public:
  explicit InsufficientTermsError(const std::string& msg)
      : Error(ErrorCode::InsufficientTerms, msg) {}
};

class NoRecurrenceFoundError : public Error {
 public:
  explicit NoRecurrenceFoundError(const std::string& msg)
      : Error(ErrorCode::NoRecurrenceFound, msg) {}
};

class InconsistentRootsError : public Error {
 public:
  explicit InconsistentRootsError(const std::string& msg)
      : Error(ErrorCode::InconsistentRoots, msg) {}
};

/// Measure recovery rejects polynomials with genuinely complex zeros.
class ComplexRootsError : public Error {
 public:
  explicit ComplexRootsError(std::complex<double> root)
      : Error(ErrorCode::ComplexRoots,
              "root " + std::to_string(root.real()) + (root.imag() < 0 ? " - " : " + ") +
                  std::to_string(std::abs(root.imag())) + "i has nonzero imaginary part"),
        root_(root) {}

  std::complex<double> root() const noexcept { return root_; }

 private:
  std::complex<double> root_;
};

/// Confluent nodes admit no finite atomic representing measure.
class RepeatedRootsError : public Error {
 public:
  RepeatedRootsError(double root, int multiplicity)
      : Error(ErrorCode::RepeatedRoots,
              "root " + std::to_string(root) + " has multiplicity " +
                  std::to_string(multiplicity)),
        root_(root),
        multiplicity_(multiplicity) {}

  double root() const noexcept { return root_; }
  int multiplicity() const noexcept { return multiplicity_; }

 private:
  double root_;
  int multiplicity_;
};

class IllConditionedError : public Error {
 public:
  IllConditionedError(double estimate, double bound)
      : Error(ErrorCode::IllConditioned,
              "condition estimate " + std::to_string(estimate) + " exceeds bound " +
                  std::to_string(bound)),
        estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class DegenerateNodesError : public Error {
 public:
  explicit DegenerateNodesError(const std::string& msg)
      : Error(ErrorCode::DegenerateNodes, msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(ErrorCode::ParseError, msg) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg) : Error(ErrorCode::SchemaError, msg) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(ErrorCode::DimensionError, msg) {}
};

}  // namespace matmoment
