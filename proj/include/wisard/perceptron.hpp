#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "wisard/dataset.hpp"
#include "wisard/error.hpp"
#include "wisard/random.hpp"

namespace wisard {

struct PerceptronHyper {
  double learning_rate = 0.01;
  std::size_t epochs = 100;
  std::uint64_t seed = 0;
  /// Visit samples in a fresh seeded order each epoch; otherwise dataset order.
  bool shuffle = true;

  void validate() const {
    if (!(learning_rate > 0.0)) throw ConfigError("perceptron learning rate must be > 0");
    if (epochs == 0) throw ConfigError("perceptron epochs must be >= 1");
  }
};

/// Single-layer perceptron with step activation.
template <typename Scalar>
struct Perceptron {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector weights;
  Scalar bias = Scalar(0);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(weights.size()); }

  /// 1 iff w.x + b > 0; a zero activation maps to 0.
  template <typename Derived>
  Label predict(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != weights.size())
      throw LengthMismatch(dimension(), static_cast<std::size_t>(x.size()));
    return weights.dot(x.template cast<Scalar>()) + bias > Scalar(0) ? kPositive : kNegative;
  }
};

/// Classic perceptron rule w += lr * (y - y_hat) * x, b += lr * (y - y_hat),
/// starting from zero. `samples` holds one sample per row.
template <typename Scalar, typename Derived>
Perceptron<Scalar> train_perceptron(const Eigen::MatrixBase<Derived>& samples,
                                    std::span<const Label> labels, const PerceptronHyper& hyper) {
  hyper.validate();
  const auto rows = static_cast<std::size_t>(samples.rows());
  if (rows == 0) throw ConfigError("perceptron needs at least one training sample");
  if (labels.size() != rows) throw LengthMismatch(rows, labels.size());

  Perceptron<Scalar> model;
  model.weights = Perceptron<Scalar>::Vector::Zero(samples.cols());
  const auto lr = static_cast<Scalar>(hyper.learning_rate);

  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(hyper.seed);
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    if (hyper.shuffle) rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      const auto row = samples.row(static_cast<Eigen::Index>(i)).transpose();
      const int error = labels[i] - model.predict(row);
      if (error == 0) continue;
      model.weights += (lr * static_cast<Scalar>(error)) * row.template cast<Scalar>();
      model.bias += lr * static_cast<Scalar>(error);
    }
  }
  return model;
}

/// Stacks a dataset's feature vectors row-wise.
Eigen::MatrixXd feature_matrix(const Dataset& ds);
Eigen::MatrixXd feature_matrix(const Dataset& ds, std::span<const std::size_t> rows);

Perceptron<double> train_perceptron(const Dataset& ds, const PerceptronHyper& hyper);
Label predict_perceptron(const Perceptron<double>& model, const FeatureVector& v);

}  // namespace wisard
