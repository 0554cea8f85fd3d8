#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbrvfl {

// Row-major so sample rows are contiguous for the kernel layer and the
// on-disk row-major arrays.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class ErrorKind {
  MissingFile,
  RaggedRows,
  NonNumericFeature,
  SingleClass,
  TooFewSamples,
  DimensionMismatch,
  LengthMismatch,
  NumericalFailure,
  VersionMismatch,
  CorruptFile,
  TargetLarger,
  ShapeMismatch,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gbrvfl
