#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vne/graph.hpp"
#include "vne/matrix.hpp"
#include "vne/vnestruct.hpp"

namespace vne {

/// Graphs with per-node attribute rows and one class label per graph.
/// Labels are dense 0..C-1; attribute matrices have one row per node.
struct AttributedGraphSet {
  std::vector<Graph> graphs;
  std::vector<Matrix> node_attributes;
  std::vector<int> graph_labels;

  std::size_t size() const { return graphs.size(); }
  std::size_t attribute_width() const {
    return node_attributes.empty() ? 0 : node_attributes.front().cols();
  }
  std::size_t num_classes() const;
};

/// Throws std::invalid_argument when attribute shapes or labels are inconsistent.
void validate(const AttributedGraphSet& set);

/// One-hot node degrees with buckets 0..max_degree; larger degrees land in
/// the top bucket.
Matrix degree_one_hot(const Graph& g, std::size_t max_degree);

std::size_t max_degree(std::span<const Graph> graphs);

/// X' = [X || H]: appends the structural embedding of each graph to its node
/// attributes. A set with no attribute columns first gets degree one-hot
/// attributes, capped at the set's maximum degree. Existing columns are kept
/// as a prefix.
AttributedGraphSet augment(const AttributedGraphSet& set, const EmbedOptions& opts);

enum class Aggregator { sum, mean };

/// Set readout psi(sum_v phi(x_v)).
///   phi: input -> hidden, ReLU
///   psi: hidden -> hidden, ReLU, then hidden -> classes (logits)
/// All parameters live in one flat vector (w1, b1, w2, b2, w3, b3; weights
/// row-major as out x in) so optimizers and gradient checks see one buffer.
class ReadoutModel {
 public:
  ReadoutModel() = default;
  ReadoutModel(std::size_t input_dim, std::size_t hidden, std::size_t classes,
               Aggregator aggregator = Aggregator::sum);

  /// Glorot-uniform weights, zero biases.
  static ReadoutModel glorot(std::size_t input_dim, std::size_t hidden, std::size_t classes,
                             std::uint64_t seed, Aggregator aggregator = Aggregator::sum);

  std::size_t input_dim() const { return in_; }
  std::size_t hidden() const { return hidden_; }
  std::size_t classes() const { return classes_; }
  Aggregator aggregator() const { return aggregator_; }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  double& w1(std::size_t o, std::size_t i) { return params_[o * in_ + i]; }
  double& b1(std::size_t o) { return params_[off_b1_ + o]; }
  double& w2(std::size_t o, std::size_t i) { return params_[off_w2_ + o * hidden_ + i]; }
  double& b2(std::size_t o) { return params_[off_b2_ + o]; }
  double& w3(std::size_t o, std::size_t i) { return params_[off_w3_ + o * hidden_ + i]; }
  double& b3(std::size_t o) { return params_[off_b3_ + o]; }

  /// Class logits for one graph's node rows. The node sum is taken per hidden
  /// unit over sorted values, so any row order gives bit-identical output.
  /// Throws std::invalid_argument on a width mismatch.
  std::vector<double> forward(const Matrix& nodes) const;

  /// Mean softmax cross-entropy over the batch; adds d(loss)/d(params) into
  /// `grad` (resized and zeroed first).
  double loss_and_gradient(std::span<const Matrix* const> batch, std::span<const int> labels,
                           std::vector<double>& grad) const;

  double loss(std::span<const Matrix* const> batch, std::span<const int> labels) const;

 private:
  struct Activations;
  void forward_pass(const Matrix& x, Activations& acts) const;

  std::size_t in_ = 0, hidden_ = 0, classes_ = 0;
  std::size_t off_b1_ = 0, off_w2_ = 0, off_b2_ = 0, off_w3_ = 0, off_b3_ = 0;
  Aggregator aggregator_ = Aggregator::sum;
  std::vector<double> params_;

  double w1c(std::size_t o, std::size_t i) const { return params_[o * in_ + i]; }
  double b1c(std::size_t o) const { return params_[off_b1_ + o]; }
  double w2c(std::size_t o, std::size_t i) const { return params_[off_w2_ + o * hidden_ + i]; }
  double b2c(std::size_t o) const { return params_[off_b2_ + o]; }
  double w3c(std::size_t o, std::size_t i) const { return params_[off_w3_ + o * hidden_ + i]; }
  double b3c(std::size_t o) const { return params_[off_b3_ + o]; }
};

struct TrainConfig {
  std::size_t hidden = 32;
  int epochs = 300;
  double learning_rate = 0.01;
  int decay_every = 50;
  double decay_factor = 0.3;
  int folds = 10;
  std::uint64_t seed = 0;
  std::size_t batch_size = 32;  // 0: full batch
  Aggregator aggregator = Aggregator::sum;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t threads = 0;
};

struct FitResult {
  ReadoutModel model;
  std::vector<double> epoch_loss;  // mean training loss per epoch
};

/// Trains a fresh model with Adam and step learning-rate decay on the graphs
/// listed in `train` (set must already be augmented).
FitResult fit_readout(const AttributedGraphSet& set, std::span<const std::size_t> train,
                      const TrainConfig& cfg, std::uint64_t seed);

std::vector<int> predict(const ReadoutModel& model, const AttributedGraphSet& set,
                         std::span<const std::size_t> which);

struct CrossValidation {
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;  // population stddev across folds
  std::vector<double> per_fold;
};

/// Stratified k-fold cross-validation; folds train in parallel with seeds
/// derived from cfg.seed. Throws std::invalid_argument with fewer graphs than
/// folds, fewer than 2 classes, or a single-class training split.
CrossValidation train_cv(const AttributedGraphSet& set, const TrainConfig& cfg);

}  // namespace vne
