#include "wisard/perceptron.hpp"

namespace wisard {

Eigen::MatrixXd feature_matrix(const Dataset& ds) {
  std::vector<std::size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return feature_matrix(ds, rows);
}

Eigen::MatrixXd feature_matrix(const Dataset& ds, std::span<const std::size_t> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(ds.dimension()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    m.row(static_cast<Eigen::Index>(r)) = ds[rows[r]].values.transpose();
  return m;
}

Perceptron<double> train_perceptron(const Dataset& ds, const PerceptronHyper& hyper) {
  std::vector<Label> labels;
  labels.reserve(ds.size());
  for (const auto& s : ds.samples()) {
    if (!s.label) throw ConfigError("sample '" + s.id + "' is unlabeled");
    labels.push_back(*s.label);
  }
  return train_perceptron<double>(feature_matrix(ds), labels, hyper);
}

Label predict_perceptron(const Perceptron<double>& model, const FeatureVector& v) {
  return model.predict(v.values);
}

}  // namespace wisard
