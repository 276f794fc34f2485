#include "vne/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "vne/jacobi.hpp"
#include "vne/rng.hpp"

namespace vne {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// 1 - H(first | second) / H(first).
double one_minus_conditional(std::span<const int> first, std::span<const int> second) {
  const auto n = static_cast<double>(first.size());
  std::map<int, double> count_first, count_second;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < first.size(); ++i) {
    count_first[first[i]] += 1.0;
    count_second[second[i]] += 1.0;
    joint[{first[i], second[i]}] += 1.0;
  }
  double h_first = 0.0;
  for (const auto& [c, cnt] : count_first) h_first -= cnt / n * std::log(cnt / n);
  if (h_first == 0.0) return 1.0;
  double h_cond = 0.0;
  for (const auto& [key, cnt] : joint) {
    h_cond -= cnt / n * std::log(cnt / count_second.at(key.second));
  }
  return std::clamp(1.0 - h_cond / h_first, 0.0, 1.0);
}

}  // namespace

ClusteringResult kmeans(const Matrix& points, int k, std::uint64_t seed, int max_iters) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("kmeans: k = " + std::to_string(k) + " exceeds " +
                                std::to_string(n) + " points");
  }
  const auto kk = static_cast<std::size_t>(k);

  // k-means++ seeding.
  Rng rng(seed);
  Matrix centers(kk, d);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::size_t first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  std::copy_n(points.row(first).begin(), d, centers.row(0).begin());
  for (std::size_t c = 1; c < kk; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = std::min(best[i], sq_dist(points.row(i), centers.row(c - 1)));
      total += best[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = std::uniform_real_distribution<double>(0.0, total)(rng);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (best[i] <= 0.0) continue;
        pick = i;
        acc += best[i];
        if (acc > target) break;
      }
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    }
    std::copy_n(points.row(pick).begin(), d, centers.row(c).begin());
  }

  ClusteringResult result;
  result.k = k;
  std::vector<int> assign(n, -1), next(n);
  std::vector<double> cost(n);
  std::vector<std::size_t> size(kk);
  for (int it = 1; it <= max_iters; ++it) {
    std::fill(size.begin(), size.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      int arg = 0;
      double dist = sq_dist(points.row(i), centers.row(0));
      for (std::size_t c = 1; c < kk; ++c) {
        const double dc = sq_dist(points.row(i), centers.row(c));
        if (dc < dist) {
          dist = dc;
          arg = static_cast<int>(c);
        }
      }
      next[i] = arg;
      cost[i] = dist;
      ++size[arg];
    }
    for (std::size_t c = 0; c < kk; ++c) {
      if (size[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (size[next[i]] > 1 && (far == n || cost[i] > cost[far])) far = i;
      }
      --size[next[far]];
      next[far] = static_cast<int>(c);
      cost[far] = 0.0;
      size[c] = 1;
      std::copy_n(points.row(far).begin(), d, centers.row(c).begin());
    }
    result.inertia = std::accumulate(cost.begin(), cost.end(), 0.0);
    result.inertia_trace.push_back(result.inertia);
    result.iterations = it;
    if (next == assign) break;
    assign = next;

    std::fill(centers.data().begin(), centers.data().end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = centers.row(static_cast<std::size_t>(assign[i]));
      for (std::size_t j = 0; j < d; ++j) row[j] += points(i, j);
    }
    for (std::size_t c = 0; c < kk; ++c) {
      for (double& x : centers.row(c)) x /= static_cast<double>(size[c]);
    }
  }
  result.assignments = next;
  return result;
}

HomogeneityCompleteness homogeneity_completeness(std::span<const int> labels,
                                                 std::span<const int> assignments) {
  if (labels.size() != assignments.size()) {
    throw std::invalid_argument("homogeneity_completeness: length mismatch");
  }
  if (labels.empty()) throw std::invalid_argument("homogeneity_completeness: no samples");
  return {one_minus_conditional(labels, assignments), one_minus_conditional(assignments, labels)};
}

double silhouette(const Matrix& points, std::span<const int> assignments) {
  const std::size_t n = points.rows();
  if (assignments.size() != n) throw std::invalid_argument("silhouette: length mismatch");
  std::map<int, std::size_t> index;
  for (int a : assignments) index.emplace(a, 0);
  if (index.size() < 2) throw std::invalid_argument("silhouette: needs at least 2 clusters");
  std::size_t next = 0;
  for (auto& [id, idx] : index) idx = next++;
  const std::size_t k = index.size();

  std::vector<std::size_t> cluster(n), size(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cluster[i] = index.at(assignments[i]);
    ++size[cluster[i]];
  }

  double total = 0.0;
  std::vector<double> sum(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (size[cluster[i]] == 1) continue;
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum[cluster[j]] += std::sqrt(sq_dist(points.row(i), points.row(j)));
    }
    const double a = sum[cluster[i]] / static_cast<double>(size[cluster[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c != cluster[i]) b = std::min(b, sum[c] / static_cast<double>(size[c]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least 2 folds");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Rng rng(seed);
  std::vector<int> fold(labels.size(), 0);
  std::size_t deal = 0;
  for (auto& [c, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i : members) fold[i] = static_cast<int>(deal++ % static_cast<std::size_t>(folds));
  }
  return fold;
}

void LogisticRegression::fit(const Matrix& x, std::span<const int> labels, int num_classes,
                             const LogisticOptions& opts) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  const auto c = static_cast<std::size_t>(num_classes);
  if (n == 0 || labels.size() != n) throw std::invalid_argument("logistic regression: bad input");

  mean_.assign(d, 0.0);
  scale_.assign(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, j);
    mean_[j] = s / static_cast<double>(n);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += (x(i, j) - mean_[j]) * (x(i, j) - mean_[j]);
    const double sd = std::sqrt(v / static_cast<double>(n));
    scale_[j] = sd > 1e-12 * (1.0 + std::fabs(mean_[j])) ? sd : 1.0;
  }
  Matrix z(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) z(i, j) = (x(i, j) - mean_[j]) / scale_[j];
  }

  weights_ = Matrix(c, d);
  bias_.assign(c, 0.0);
  Matrix grad_w(c, d);
  std::vector<double> grad_b(c), prob(c);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    std::fill(grad_w.data().begin(), grad_w.data().end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < c; ++k) {
        double s = bias_[k];
        for (std::size_t j = 0; j < d; ++j) s += weights_(k, j) * z(i, j);
        prob[k] = s;
        top = std::max(top, s);
      }
      double norm = 0.0;
      for (double& p : prob) norm += (p = std::exp(p - top));
      for (std::size_t k = 0; k < c; ++k) {
        const double delta = prob[k] / norm - (labels[i] == static_cast<int>(k) ? 1.0 : 0.0);
        grad_b[k] += delta * inv_n;
        for (std::size_t j = 0; j < d; ++j) grad_w(k, j) += delta * z(i, j) * inv_n;
      }
    }
    for (std::size_t k = 0; k < c; ++k) {
      bias_[k] -= opts.learning_rate * grad_b[k];
      for (std::size_t j = 0; j < d; ++j) {
        weights_(k, j) -= opts.learning_rate * (grad_w(k, j) + opts.l2 * weights_(k, j));
      }
    }
  }
}

std::vector<int> LogisticRegression::predict(const Matrix& x) const {
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < weights_.rows(); ++k) {
      double s = bias_[k];
      for (std::size_t j = 0; j < x.cols(); ++j) s += weights_(k, j) * (x(i, j) - mean_[j]) / scale_[j];
      if (s > best) {
        best = s;
        out[i] = static_cast<int>(k);
      }
    }
  }
  return out;
}

double f1_macro(std::span<const int> truth, std::span<const int> predicted) {
  std::set<int> classes(truth.begin(), truth.end());
  classes.insert(predicted.begin(), predicted.end());
  double total = 0.0;
  for (int c : classes) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool t = truth[i] == c;
      const bool p = predicted[i] == c;
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    if (tp > 0) total += 2 * tp / (2 * tp + fp + fn);
  }
  return classes.empty() ? 0.0 : total / static_cast<double>(classes.size());
}

ClassificationScores classify_roles(const Matrix& features, std::span<const int> labels, int folds,
                                    std::uint64_t seed, const LogisticOptions& opts) {
  const std::size_t n = features.rows();
  if (labels.size() != n) throw std::invalid_argument("classify_roles: length mismatch");
  const std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) throw std::invalid_argument("classify_roles: needs at least 2 classes");
  if (*distinct.begin() < 0) throw std::invalid_argument("classify_roles: negative label");
  const int num_classes = *distinct.rbegin() + 1;
  folds = std::min(folds, static_cast<int>(n));

  const auto fold_of = stratified_folds(labels, folds, seed);
  ClassificationScores scores;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < n; ++i) (fold_of[i] == f ? test : train).push_back(i);
    if (test.empty() || train.empty()) continue;
    auto gather = [&](const std::vector<std::size_t>& idx, Matrix& x, std::vector<int>& y) {
      x = Matrix(idx.size(), features.cols());
      y.resize(idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r) {
        std::copy_n(features.row(idx[r]).begin(), features.cols(), x.row(r).begin());
        y[r] = labels[idx[r]];
      }
    };
    Matrix x_train, x_test;
    std::vector<int> y_train, y_test;
    gather(train, x_train, y_train);
    gather(test, x_test, y_test);

    LogisticRegression model;
    model.fit(x_train, y_train, num_classes, opts);
    const auto pred = model.predict(x_test);
    double correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == y_test[i];
    scores.fold_accuracy.push_back(correct / static_cast<double>(pred.size()));
    scores.fold_f1.push_back(f1_macro(y_test, pred));
  }
  scores.accuracy = mean(scores.fold_accuracy);
  scores.f1_macro = mean(scores.fold_f1);
  return scores;
}

Matrix pca2(const Matrix& points) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  if (d < 2) throw std::invalid_argument("pca2: needs at least 2 feature columns");
  std::vector<double> mu(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) mu[j] += points(i, j);
  }
  for (double& m : mu) m /= static_cast<double>(std::max<std::size_t>(n, 1));

  Matrix cov(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) {
        cov(a, b) += (points(i, a) - mu[a]) * (points(i, b) - mu[b]);
      }
    }
  }
  const auto eig = jacobi_eigen(cov, /*want_vectors=*/true);

  Matrix out(n, 2);
  for (std::size_t comp = 0; comp < 2; ++comp) {
    const std::size_t col = d - 1 - comp;
    std::size_t lead = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::fabs(eig.vectors(j, col)) > std::fabs(eig.vectors(lead, col))) lead = j;
    }
    const double sign = eig.vectors(lead, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += (points(i, j) - mu[j]) * eig.vectors(j, col);
      out(i, comp) = sign * s;
    }
  }
  return out;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return std::sqrt(v / static_cast<double>(xs.size()));
}

MetricsReport evaluate_roles(const Matrix& embeddings, std::span<const int> labels,
                             const RoleEvalOptions& opts) {
  if (embeddings.rows() != labels.size()) {
    throw std::invalid_argument("evaluate_roles: embedding rows do not match labels");
  }
  const int k = static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
  std::vector<double> hs, cs, ss;
  for (int run = 0; run < opts.kmeans_runs; ++run) {
    const auto cl = kmeans(embeddings, k, derive_seed(opts.seed, "kmeans", run));
    const auto hc = homogeneity_completeness(labels, cl.assignments);
    hs.push_back(hc.homogeneity);
    cs.push_back(hc.completeness);
    const std::set<int> used(cl.assignments.begin(), cl.assignments.end());
    ss.push_back(used.size() >= 2 ? silhouette(embeddings, cl.assignments) : 0.0);
  }
  const auto cls = classify_roles(embeddings, labels, opts.folds, derive_seed(opts.seed, "classify"));

  MetricsReport r;
  r.runs = opts.kmeans_runs;
  r.homogeneity = mean(hs);
  r.completeness = mean(cs);
  r.silhouette = mean(ss);
  r.accuracy = cls.accuracy;
  r.f1_macro = cls.f1_macro;
  r.stddev.homogeneity = stddev(hs);
  r.stddev.completeness = stddev(cs);
  r.stddev.silhouette = stddev(ss);
  r.stddev.accuracy = stddev(cls.fold_accuracy);
  r.stddev.f1_macro = stddev(cls.fold_f1);
  return r;
}

MetricsReport aggregate_reports(std::span<const MetricsReport> reports) {
  std::vector<double> h, c, s, a, f;
  for (const auto& r : reports) {
    h.push_back(r.homogeneity);
    c.push_back(r.completeness);
    s.push_back(r.silhouette);
    a.push_back(r.accuracy);
    f.push_back(r.f1_macro);
  }
  MetricsReport out;
  out.runs = static_cast<int>(reports.size());
  out.homogeneity = mean(h);
  out.completeness = mean(c);
  out.silhouette = mean(s);
  out.accuracy = mean(a);
  out.f1_macro = mean(f);
  out.stddev.homogeneity = stddev(h);
  out.stddev.completeness = stddev(c);
  out.stddev.silhouette = stddev(s);
  out.stddev.accuracy = stddev(a);
  out.stddev.f1_macro = stddev(f);
  return out;
}

}  // namespace vne
