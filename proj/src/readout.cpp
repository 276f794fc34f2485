#include "vne/readout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "vne/evaluation.hpp"
#include "vne/parallel.hpp"
#include "vne/rng.hpp"

namespace vne {

std::size_t AttributedGraphSet::num_classes() const {
  return std::set<int>(graph_labels.begin(), graph_labels.end()).size();
}

void validate(const AttributedGraphSet& set) {
  if (set.node_attributes.size() != set.graphs.size() ||
      set.graph_labels.size() != set.graphs.size()) {
    throw std::invalid_argument("graph set: graphs, attributes and labels differ in count");
  }
  const std::size_t width = set.attribute_width();
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.node_attributes[i].rows() != set.graphs[i].num_nodes()) {
      throw std::invalid_argument("graph " + std::to_string(i) +
                                  ": attribute rows do not match node count");
    }
    if (set.node_attributes[i].cols() != width) {
      throw std::invalid_argument("graph " + std::to_string(i) + ": attribute width differs");
    }
  }
  const std::size_t c = set.num_classes();
  for (int label : set.graph_labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= c) {
      throw std::invalid_argument("graph labels must be dense 0..C-1");
    }
  }
}

Matrix degree_one_hot(const Graph& g, std::size_t max_degree) {
  Matrix out(g.num_nodes(), max_degree + 1);
  for (NodeId v = 0; v < g.num_nodes(); ++v) out(v, std::min(g.degree(v), max_degree)) = 1.0;
  return out;
}

std::size_t max_degree(std::span<const Graph> graphs) {
  std::size_t top = 0;
  for (const auto& g : graphs) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) top = std::max(top, g.degree(v));
  }
  return top;
}

AttributedGraphSet augment(const AttributedGraphSet& set, const EmbedOptions& opts) {
  AttributedGraphSet out;
  out.graphs = set.graphs;
  out.graph_labels = set.graph_labels;
  out.node_attributes.resize(set.size());

  const bool needs_degrees = set.attribute_width() == 0;
  const std::size_t cap = needs_degrees ? max_degree(set.graphs) : 0;

  EmbedOptions per_graph = opts;
  per_graph.threads = 1;
  parallel_for(
      set.size(),
      [&](std::size_t i) {
        const Graph& g = set.graphs[i];
        const Matrix base = needs_degrees ? degree_one_hot(g, cap) : set.node_attributes[i];
        const auto emb = embed(g, per_graph);
        Matrix x(g.num_nodes(), base.cols() + emb.radius());
        for (std::size_t v = 0; v < g.num_nodes(); ++v) {
          std::copy_n(base.row(v).begin(), base.cols(), x.row(v).begin());
          std::copy_n(emb.values.row(v).begin(), emb.radius(), x.row(v).begin() + base.cols());
        }
        out.node_attributes[i] = std::move(x);
      },
      opts.threads);
  return out;
}

ReadoutModel::ReadoutModel(std::size_t input_dim, std::size_t hidden, std::size_t classes,
                           Aggregator aggregator)
    : in_(input_dim), hidden_(hidden), classes_(classes), aggregator_(aggregator) {
  off_b1_ = hidden * input_dim;
  off_w2_ = off_b1_ + hidden;
  off_b2_ = off_w2_ + hidden * hidden;
  off_w3_ = off_b2_ + hidden;
  off_b3_ = off_w3_ + classes * hidden;
  params_.assign(off_b3_ + classes, 0.0);
}

ReadoutModel ReadoutModel::glorot(std::size_t input_dim, std::size_t hidden, std::size_t classes,
                                  std::uint64_t seed, Aggregator aggregator) {
  ReadoutModel m(input_dim, hidden, classes, aggregator);
  Rng rng(seed);
  auto fill = [&](std::size_t offset, std::size_t out, std::size_t in) {
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> u(-limit, limit);
    for (std::size_t i = 0; i < out * in; ++i) m.params_[offset + i] = u(rng);
  };
  fill(0, hidden, input_dim);
  fill(m.off_w2_, hidden, hidden);
  fill(m.off_w3_, classes, hidden);
  return m;
}

struct ReadoutModel::Activations {
  std::vector<double> pre1;  // nodes x hidden, row-major
  std::vector<double> pooled;
  std::vector<double> pre2;
  std::vector<double> hidden2;
  std::vector<double> logits;
};

void ReadoutModel::forward_pass(const Matrix& x, Activations& acts) const {
  if (x.cols() != in_) {
    throw std::invalid_argument("readout: input width " + std::to_string(x.cols()) +
                                " does not match model width " + std::to_string(in_));
  }
  const std::size_t n = x.rows();

  acts.pre1.assign(n * hidden_, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t o = 0; o < hidden_; ++o) {
      double s = b1c(o);
      for (std::size_t i = 0; i < in_; ++i) s += w1c(o, i) * x(v, i);
      acts.pre1[v * hidden_ + o] = s;
    }
  }

  // Sorting each unit's column makes the reduction order a function of the
  // multiset of node values only.
  acts.pooled.assign(hidden_, 0.0);
  std::vector<double> column(n);
  for (std::size_t o = 0; o < hidden_; ++o) {
    for (std::size_t v = 0; v < n; ++v) column[v] = std::max(0.0, acts.pre1[v * hidden_ + o]);
    std::sort(column.begin(), column.end());
    double s = 0.0;
    for (double val : column) s += val;
    if (aggregator_ == Aggregator::mean && n > 0) s /= static_cast<double>(n);
    acts.pooled[o] = s;
  }

  acts.pre2.assign(hidden_, 0.0);
  acts.hidden2.assign(hidden_, 0.0);
  for (std::size_t o = 0; o < hidden_; ++o) {
    double s = b2c(o);
    for (std::size_t i = 0; i < hidden_; ++i) s += w2c(o, i) * acts.pooled[i];
    acts.pre2[o] = s;
    acts.hidden2[o] = std::max(0.0, s);
  }

  acts.logits.assign(classes_, 0.0);
  for (std::size_t o = 0; o < classes_; ++o) {
    double s = b3c(o);
    for (std::size_t i = 0; i < hidden_; ++i) s += w3c(o, i) * acts.hidden2[i];
    acts.logits[o] = s;
  }
}

namespace {

// Returns -log softmax(logits)[label] and writes softmax - onehot into `delta`.
double softmax_xent(std::span<const double> logits, int label, std::vector<double>& delta) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double norm = 0.0;
  delta.resize(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) norm += (delta[k] = std::exp(logits[k] - top));
  for (double& d : delta) d /= norm;
  const double loss = -(logits[static_cast<std::size_t>(label)] - top - std::log(norm));
  delta[static_cast<std::size_t>(label)] -= 1.0;
  return loss;
}

}  // namespace

std::vector<double> ReadoutModel::forward(const Matrix& nodes) const {
  Activations acts;
  forward_pass(nodes, acts);
  return acts.logits;
}

double ReadoutModel::loss(std::span<const Matrix* const> batch, std::span<const int> labels) const {
  Activations acts;
  std::vector<double> delta;
  double total = 0.0;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    forward_pass(*batch[b], acts);
    total += softmax_xent(acts.logits, labels[b], delta);
  }
  return total / static_cast<double>(batch.size());
}

double ReadoutModel::loss_and_gradient(std::span<const Matrix* const> batch,
                                       std::span<const int> labels,
                                       std::vector<double>& grad) const {
  grad.assign(params_.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  Activations acts;
  std::vector<double> delta, d_hidden2(hidden_), d_pre2(hidden_), d_pooled(hidden_);
  double total = 0.0;

  for (std::size_t b = 0; b < batch.size(); ++b) {
    const Matrix& x = *batch[b];
    forward_pass(x, acts);
    total += softmax_xent(acts.logits, labels[b], delta);
    for (double& d : delta) d *= scale;

    // psi output layer.
    std::fill(d_hidden2.begin(), d_hidden2.end(), 0.0);
    for (std::size_t o = 0; o < classes_; ++o) {
      grad[off_b3_ + o] += delta[o];
      for (std::size_t i = 0; i < hidden_; ++i) {
        grad[off_w3_ + o * hidden_ + i] += delta[o] * acts.hidden2[i];
        d_hidden2[i] += w3c(o, i) * delta[o];
      }
    }
    // psi hidden layer.
    std::fill(d_pooled.begin(), d_pooled.end(), 0.0);
    for (std::size_t o = 0; o < hidden_; ++o) {
      d_pre2[o] = acts.pre2[o] > 0.0 ? d_hidden2[o] : 0.0;
      grad[off_b2_ + o] += d_pre2[o];
      for (std::size_t i = 0; i < hidden_; ++i) {
        grad[off_w2_ + o * hidden_ + i] += d_pre2[o] * acts.pooled[i];
        d_pooled[i] += w2c(o, i) * d_pre2[o];
      }
    }
    if (aggregator_ == Aggregator::mean && x.rows() > 0) {
      for (double& d : d_pooled) d /= static_cast<double>(x.rows());
    }
    // phi, shared across nodes.
    for (std::size_t v = 0; v < x.rows(); ++v) {
      for (std::size_t o = 0; o < hidden_; ++o) {
        if (acts.pre1[v * hidden_ + o] <= 0.0) continue;
        const double d = d_pooled[o];
        grad[off_b1_ + o] += d;
        for (std::size_t i = 0; i < in_; ++i) grad[o * in_ + i] += d * x(v, i);
      }
    }
  }
  return total * scale;
}

FitResult fit_readout(const AttributedGraphSet& set, std::span<const std::size_t> train,
                      const TrainConfig& cfg, std::uint64_t seed) {
  if (train.empty()) throw std::invalid_argument("fit_readout: empty training set");
  FitResult result;
  result.model = ReadoutModel::glorot(set.attribute_width(), cfg.hidden, set.num_classes(),
                                      derive_seed(seed, "init"), cfg.aggregator);
  ReadoutModel& model = result.model;
  auto params = model.params();

  std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0), grad;
  std::vector<std::size_t> order(train.begin(), train.end());
  Rng rng(derive_seed(seed, "batches"));
  const std::size_t batch = cfg.batch_size == 0 ? order.size() : cfg.batch_size;
  std::vector<const Matrix*> xs;
  std::vector<int> ys;
  long step = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double lr =
        cfg.learning_rate * std::pow(cfg.decay_factor, cfg.decay_every > 0 ? epoch / cfg.decay_every : 0);
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t stop = std::min(order.size(), start + batch);
      xs.clear();
      ys.clear();
      for (std::size_t i = start; i < stop; ++i) {
        xs.push_back(&set.node_attributes[order[i]]);
        ys.push_back(set.graph_labels[order[i]]);
      }
      epoch_loss += model.loss_and_gradient(xs, ys, grad) * static_cast<double>(stop - start);

      ++step;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      for (std::size_t p = 0; p < params.size(); ++p) {
        m[p] = cfg.beta1 * m[p] + (1.0 - cfg.beta1) * grad[p];
        v[p] = cfg.beta2 * v[p] + (1.0 - cfg.beta2) * grad[p] * grad[p];
        params[p] -= lr * (m[p] / c1) / (std::sqrt(v[p] / c2) + cfg.epsilon);
      }
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(order.size()));
  }
  return result;
}

std::vector<int> predict(const ReadoutModel& model, const AttributedGraphSet& set,
                         std::span<const std::size_t> which) {
  std::vector<int> out;
  out.reserve(which.size());
  for (std::size_t i : which) {
    const auto logits = model.forward(set.node_attributes[i]);
    out.push_back(static_cast<int>(std::max_element(logits.begin(), logits.end()) - logits.begin()));
  }
  return out;
}

CrossValidation train_cv(const AttributedGraphSet& set, const TrainConfig& cfg) {
  validate(set);
  if (set.num_classes() < 2) throw std::invalid_argument("train_cv: needs at least 2 classes");
  if (cfg.folds < 2 || set.size() < static_cast<std::size_t>(cfg.folds)) {
    throw std::invalid_argument("train_cv: need at least as many graphs as folds (>= 2)");
  }
  const auto fold_of = stratified_folds(set.graph_labels, cfg.folds, derive_seed(cfg.seed, "folds"));

  std::vector<std::vector<std::size_t>> train(cfg.folds), test(cfg.folds);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (int f = 0; f < cfg.folds; ++f) (fold_of[i] == f ? test : train)[f].push_back(i);
  }
  for (int f = 0; f < cfg.folds; ++f) {
    std::set<int> seen;
    for (std::size_t i : train[f]) seen.insert(set.graph_labels[i]);
    if (seen.size() < 2) {
      throw std::invalid_argument("train_cv: fold " + std::to_string(f) +
                                  " has a single-class training split");
    }
  }

  CrossValidation cv;
  cv.per_fold.assign(cfg.folds, 0.0);
  parallel_for(
      static_cast<std::size_t>(cfg.folds),
      [&](std::size_t f) {
        const auto fit = fit_readout(set, train[f], cfg, derive_seed(cfg.seed, "fold", f));
        const auto pred = predict(fit.model, set, test[f]);
        double correct = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == set.graph_labels[test[f][i]];
        cv.per_fold[f] = test[f].empty() ? 0.0 : correct / static_cast<double>(test[f].size());
      },
      cfg.threads);
  cv.accuracy_mean = mean(cv.per_fold);
  cv.accuracy_std = stddev(cv.per_fold);
  return cv;
}

}  // namespace vne
