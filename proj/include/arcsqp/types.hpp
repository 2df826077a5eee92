#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace arcsqp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A requested quantity came out non-finite or could not be formed.
/// member() identifies the culprit: 'f', 'c', 'g', 'A' or 'H'.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(char member, const std::string& msg)
      : std::runtime_error(msg), member_(member) {}
  char member() const { return member_; }

 private:
  char member_;
};

/// The constraint Jacobian lost full row rank (smallest singular value
/// below the rank tolerance).
class RankDeficiencyError : public std::runtime_error {
 public:
  explicit RankDeficiencyError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Invalid solver configuration or problem definition.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace arcsqp
