#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wisard/perceptron.hpp"

using namespace wisard;

namespace {

/// Straight-line replay of the perceptron rule over a fixed visiting order.
struct Replay {
  std::vector<double> w;
  double b = 0.0;
};

Replay replay(const std::vector<std::vector<double>>& xs, const std::vector<int>& ys, double lr,
              int epochs) {
  Replay r;
  r.w.assign(xs.front().size(), 0.0);
  for (int e = 0; e < epochs; ++e)
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double act = r.b;
      for (std::size_t j = 0; j < r.w.size(); ++j) act += r.w[j] * xs[i][j];
      const int yhat = act > 0.0 ? 1 : 0;
      const int err = ys[i] - yhat;
      for (std::size_t j = 0; j < r.w.size(); ++j) r.w[j] += lr * err * xs[i][j];
      r.b += lr * err;
    }
  return r;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& xs) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xs[0].size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs[0].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = xs[i][j];
  return m;
}

PerceptronHyper fixed_order(double lr, std::size_t epochs) {
  return {.learning_rate = lr, .epochs = epochs, .seed = 0, .shuffle = false};
}

double training_accuracy(const Perceptron<double>& p, const Eigen::MatrixXd& x,
                         const std::vector<Label>& y) {
  std::size_t ok = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    if (p.predict(x.row(i).transpose()) == y[static_cast<std::size_t>(i)]) ++ok;
  return static_cast<double>(ok) / static_cast<double>(y.size());
}

}  // namespace

TEST_CASE("hyperparameter validation") {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(2, 2);
  const std::vector<Label> y{1, 0};
  CHECK_THROWS_AS(train_perceptron<double>(x, y, fixed_order(0.0, 1)), ConfigError);
  CHECK_THROWS_AS(train_perceptron<double>(x, y, fixed_order(-1.0, 1)), ConfigError);
  CHECK_THROWS_AS(train_perceptron<double>(x, y, fixed_order(0.1, 0)), ConfigError);
  CHECK_THROWS_AS(train_perceptron<double>(x, std::vector<Label>{1}, fixed_order(0.1, 1)), LengthMismatch);
}

TEST_CASE("an epoch without mistakes leaves the model unchanged") {
  // zero model predicts 0 everywhere, so an all-negative set needs no update
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, 3);
  const std::vector<Label> y(5, kNegative);
  const auto p = train_perceptron<double>(x, y, fixed_order(0.5, 1));
  CHECK(p.weights.isZero());
  CHECK(p.bias == 0.0);
}

TEST_CASE("1-D separable set converges within two epochs") {
  const std::vector<std::vector<double>> xs{{1.0}, {-1.0}};
  const std::vector<int> ys{1, 0};
  // hand replay: (x=+1) is misclassified once -> w = 1, b = 1; (x=-1) then gives 0 -> correct
  const Replay r = replay(xs, ys, 1.0, 2);
  CHECK(r.w[0] == 1.0);
  CHECK(r.b == 1.0);
  const std::vector<Label> y{1, 0};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = train_perceptron<double>(to_matrix(xs), y,
                                            {.learning_rate = 1.0, .epochs = 2, .seed = seed});
    CHECK(p.weights[0] == 1.0);
    CHECK(p.bias == 1.0);
    CHECK(training_accuracy(p, to_matrix(xs), y) == 1.0);
  }
}

TEST_CASE("duplicated samples give the same boundary for one fixed-order epoch") {
  const std::vector<std::vector<double>> xs{{1.0}, {-1.0}};
  const std::vector<std::vector<double>> dup{{1.0}, {1.0}, {-1.0}, {-1.0}};
  const Replay a = replay(xs, {1, 0}, 1.0, 1);
  const Replay b = replay(dup, {1, 1, 0, 0}, 1.0, 1);
  CHECK(a.w == b.w);
  CHECK(a.b == b.b);
  const auto pa = train_perceptron<double>(to_matrix(xs), std::vector<Label>{1, 0}, fixed_order(1.0, 1));
  const auto pb = train_perceptron<double>(to_matrix(dup), std::vector<Label>{1, 1, 0, 0}, fixed_order(1.0, 1));
  for (double x : {-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0}) {
    Eigen::VectorXd v(1);
    v << x;
    CHECK(pa.predict(v) == pb.predict(v));
  }
}

TEST_CASE("fixed-order training matches the straight-line replay") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> xs(30, std::vector<double>(6));
  std::vector<int> ys(30);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (double& v : xs[i]) v = g(rng);
    ys[i] = xs[i][0] + 0.5 * xs[i][3] > 0.1 ? 1 : 0;
  }
  const Replay r = replay(xs, ys, 0.25, 7);
  const auto p = train_perceptron<double>(to_matrix(xs), std::vector<Label>(ys.begin(), ys.end()),
                                          fixed_order(0.25, 7));
  for (std::size_t j = 0; j < 6; ++j) CHECK(p.weights[static_cast<Eigen::Index>(j)] == doctest::Approx(r.w[j]).epsilon(1e-12));
  CHECK(p.bias == doctest::Approx(r.b).epsilon(1e-12));
}

TEST_CASE("training is deterministic given the seed") {
  const Dataset ds = wisard::testing::make_separable_dataset(20, 10, 64, 1.5, 3);
  const PerceptronHyper h{.learning_rate = 0.01, .epochs = 5, .seed = 12};
  const auto a = train_perceptron(ds, h);
  const auto b = train_perceptron(ds, h);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
}

TEST_CASE("converges on separable data") {
  const Dataset ds = wisard::testing::make_separable_dataset(63, 15, 2048, 0.1, 4);
  const auto p = train_perceptron(ds, {});
  std::size_t ok = 0;
  for (const auto& s : ds.samples()) ok += predict_perceptron(p, s) == *s.label;
  CHECK(ok == ds.size());
}

TEST_CASE("predict") {
  Perceptron<double> zero{Eigen::VectorXd::Zero(3), 0.0};
  CHECK(zero.predict(Eigen::Vector3d(1, 2, 3)) == kNegative);
  CHECK(zero.predict(Eigen::Vector3d(-1, 0, 9)) == kNegative);

  Perceptron<double> e1{Eigen::VectorXd::Unit(3, 0), 0.0};
  CHECK(e1.predict(Eigen::Vector3d(5, 0, 0)) == kPositive);
  CHECK(e1.predict(Eigen::Vector3d(0, 7, 7)) == kNegative);
  CHECK_THROWS_AS(e1.predict(Eigen::Vector2d(1, 1)), LengthMismatch);

  SUBCASE("positive rescaling keeps every label") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    Perceptron<double> p{Eigen::VectorXd(8), g(rng)};
    for (auto& w : p.weights) w = g(rng);
    for (int i = 0; i < 200; ++i) {
      Eigen::VectorXd x(8);
      for (auto& v : x) v = g(rng);
      const double a = 0.01 + std::abs(g(rng)) * 10;
      Perceptron<double> scaled{a * p.weights, a * p.bias};
      CHECK(scaled.predict(x) == p.predict(x));
    }
  }
}

TEST_CASE("float scalar instantiation") {
  Eigen::MatrixXf x(2, 1);
  x << 1.0f, -1.0f;
  const auto p = train_perceptron<float>(x, std::vector<Label>{1, 0}, fixed_order(1.0, 2));
  CHECK(p.predict(Eigen::VectorXf::Constant(1, 2.0f)) == kPositive);
  CHECK(p.predict(Eigen::VectorXf::Constant(1, -2.0f)) == kNegative);
}
