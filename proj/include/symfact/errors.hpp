#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace symfact {

enum class ErrorKind {
  InvalidArgument,
  NotUnitary,
  ConvergenceFailure,
  SpectrumNotConjSymmetric,
  NotIntertwiner,
  DeterminantObstruction,
  MultiplicityConstraint,
  NotFourthRoot,
  OddDimension,
  DimensionNotDivisible,
  RankMismatch,
  NotCommuting,
  ShapeMismatch,
  SchemaError,
};

const char* to_string(ErrorKind kind);

// Base of every exception thrown by the library. The kind is the stable,
// machine-readable part; what() is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NotUnitary : public Error {
 public:
  NotUnitary(const std::string& what, double defect)
      : Error(ErrorKind::NotUnitary, what + " is not unitary (defect " + std::to_string(defect) + ")"),
        defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& message, double residual)
      : Error(ErrorKind::ConvergenceFailure, message), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// The eigenvalue multiset is not closed under conjugation.
class SpectrumNotConjSymmetric : public Error {
 public:
  SpectrumNotConjSymmetric(std::complex<double> eigenvalue, double margin)
      : Error(ErrorKind::SpectrumNotConjSymmetric,
              "eigenvalue multiset is not closed under conjugation"),
        eigenvalue_(eigenvalue),
        margin_(margin) {}
  std::complex<double> eigenvalue() const noexcept { return eigenvalue_; }
  double margin() const noexcept { return margin_; }

 private:
  std::complex<double> eigenvalue_;
  double margin_;
};

class DeterminantObstruction : public Error {
 public:
  DeterminantObstruction(std::complex<double> det, double distance)
      : Error(ErrorKind::DeterminantObstruction,
              "determinant is at distance " + std::to_string(distance) + " from {+1, -1}"),
        det_(det),
        distance_(distance) {}
  std::complex<double> det() const noexcept { return det_; }
  double distance() const noexcept { return distance_; }

 private:
  std::complex<double> det_;
  double distance_;
};

// A scalar block exp(i pi p/q) I_m needs 2q | m.
class MultiplicityConstraint : public Error {
 public:
  MultiplicityConstraint(std::complex<double> eigenvalue, int multiplicity, int minimal_block)
      : Error(ErrorKind::MultiplicityConstraint,
              "multiplicity " + std::to_string(multiplicity) +
                  " is not a multiple of the minimal block size " +
                  std::to_string(minimal_block)),
        eigenvalue_(eigenvalue),
        multiplicity_(multiplicity),
        minimal_block_(minimal_block) {}
  std::complex<double> eigenvalue() const noexcept { return eigenvalue_; }
  int multiplicity() const noexcept { return multiplicity_; }
  int minimal_block() const noexcept { return minimal_block_; }

 private:
  std::complex<double> eigenvalue_;
  int multiplicity_;
  int minimal_block_;
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error(ErrorKind::SchemaError, path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace symfact
