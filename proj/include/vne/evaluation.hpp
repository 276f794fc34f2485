#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "vne/matrix.hpp"

namespace vne {

struct ClusteringResult {
  std::vector<int> assignments;  // dense cluster ids 0..k-1
  int k = 0;
  double inertia = 0.0;               // sum of squared distances to centroids
  std::vector<double> inertia_trace;  // one entry per Lloyd iteration
  int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding; deterministic for a given seed.
/// An empty cluster takes over the point farthest from its centroid.
ClusteringResult kmeans(const Matrix& points, int k, std::uint64_t seed, int max_iters = 300);

struct HomogeneityCompleteness {
  double homogeneity = 0.0;
  double completeness = 0.0;
};

/// h = 1 - H(C|K)/H(C), c = 1 - H(K|C)/H(K), natural log; a ratio whose
/// denominator entropy is 0 counts as 1.
HomogeneityCompleteness homogeneity_completeness(std::span<const int> labels,
                                                 std::span<const int> assignments);

/// Mean silhouette coefficient with Euclidean distance. Points in singleton
/// clusters score 0, as does a point with max(a, b) = 0. Needs >= 2 clusters.
double silhouette(const Matrix& points, std::span<const int> assignments);

/// Fold id per sample. Each class is shuffled and dealt round-robin, with the
/// dealing position carried across classes so fold sizes stay balanced.
std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed);

struct LogisticOptions {
  double l2 = 1e-3;
  double learning_rate = 0.5;
  int epochs = 2000;
};

/// Multinomial logistic regression with an L2 penalty on the weights, fit by
/// full-batch gradient descent on standardized features.
class LogisticRegression {
 public:
  void fit(const Matrix& x, std::span<const int> labels, int num_classes,
           const LogisticOptions& opts = {});
  std::vector<int> predict(const Matrix& x) const;

 private:
  std::vector<double> mean_, scale_;
  Matrix weights_;  // classes x features
  std::vector<double> bias_;
};

struct ClassificationScores {
  double accuracy = 0.0;
  double f1_macro = 0.0;
  std::vector<double> fold_accuracy;
  std::vector<double> fold_f1;
};

/// Macro F1 over the classes present in the truth or the predictions.
double f1_macro(std::span<const int> truth, std::span<const int> predicted);

/// Stratified k-fold cross-validated logistic regression on the embeddings.
/// Throws std::invalid_argument when only one class is present.
ClassificationScores classify_roles(const Matrix& features, std::span<const int> labels,
                                    int folds, std::uint64_t seed,
                                    const LogisticOptions& opts = {});

/// Projection onto the top two principal components. Each component's
/// largest-magnitude loading is made positive. Needs d >= 2.
Matrix pca2(const Matrix& points);

struct MetricsReport {
  double homogeneity = 0.0;
  double completeness = 0.0;
  double silhouette = 0.0;
  double accuracy = 0.0;
  double f1_macro = 0.0;
  int runs = 0;
  struct {
    double homogeneity = 0.0;
    double completeness = 0.0;
    double silhouette = 0.0;
    double accuracy = 0.0;
    double f1_macro = 0.0;
  } stddev;
};

struct RoleEvalOptions {
  int kmeans_runs = 10;
  int folds = 5;
  std::uint64_t seed = 0;
};

/// Clusters with k = number of classes over `kmeans_runs` seeds and
/// cross-validates the classifier. Clustering stddev is across runs,
/// classification stddev across folds.
MetricsReport evaluate_roles(const Matrix& embeddings, std::span<const int> labels,
                             const RoleEvalOptions& opts = {});

/// Mean of each metric over reports, stddev across reports.
MetricsReport aggregate_reports(std::span<const MetricsReport> reports);

double mean(std::span<const double> xs);
/// Population standard deviation.
double stddev(std::span<const double> xs);

}  // namespace vne
