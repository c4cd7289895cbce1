// LVQ-style prototype classifier: per-class k-means initialization followed
// by one LVQ1 pass over the training data, learning rate 0.05 with linear
// decay. Fully deterministic; no seed input.

#include <algorithm>
#include <limits>

#include "cvbench/kernels.hpp"
#include "internal.hpp"

namespace cvbench::detail {

namespace {

struct ProtoImpl final : ModelImpl {
  std::size_t dim = 0;
  std::vector<double> prototypes;  // row-major, class-0 prototypes first
  std::vector<int> proto_label;

  int classify(const double* z) const override {
    double best = std::numeric_limits<double>::infinity();
    int label = 0;
    for (std::size_t p = 0; p < proto_label.size(); ++p) {
      double dist =
          kernels::squared_l2(z, prototypes.data() + p * dim, dim);
      if (dist < best) {
        best = dist;
        label = proto_label[p];
      }
    }
    return label;
  }
};

// Lloyd iterations with deterministic init: centers start at evenly spaced
// members (by position) of the class. Empty clusters keep their previous
// center.
std::vector<double> kmeans_centers(const TrainSet& train,
                                   const std::vector<std::size_t>& members,
                                   std::size_t n_centers) {
  std::size_t d = train.d;
  std::vector<double> centers(n_centers * d);
  for (std::size_t c = 0; c < n_centers; ++c) {
    std::size_t pick = members[c * members.size() / n_centers];
    std::copy_n(train.row(pick), d, centers.begin() +
                                        static_cast<std::ptrdiff_t>(c * d));
  }

  std::vector<std::size_t> assign(members.size(), 0);
  for (int iter = 0; iter < 10; ++iter) {
    bool changed = false;
    for (std::size_t m = 0; m < members.size(); ++m) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < n_centers; ++c) {
        double dist = kernels::squared_l2(train.row(members[m]),
                                          centers.data() + c * d, d);
        if (dist < best) {
          best = dist;
          best_c = c;
        }
      }
      if (assign[m] != best_c) {
        assign[m] = best_c;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;
    std::vector<double> sums(n_centers * d, 0.0);
    std::vector<std::size_t> sizes(n_centers, 0);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const double* r = train.row(members[m]);
      double* s = sums.data() + assign[m] * d;
      for (std::size_t j = 0; j < d; ++j) s[j] += r[j];
      ++sizes[assign[m]];
    }
    for (std::size_t c = 0; c < n_centers; ++c) {
      if (sizes[c] == 0) continue;
      double* ctr = centers.data() + c * d;
      const double* s = sums.data() + c * d;
      for (std::size_t j = 0; j < d; ++j)
        ctr[j] = s[j] / static_cast<double>(sizes[c]);
    }
  }
  return centers;
}

}  // namespace

std::unique_ptr<ModelImpl> train_proto(const TrainSet& train,
                                       int prototypes_per_class) {
  std::size_t d = train.d;
  auto impl = std::make_unique<ProtoImpl>();
  impl->dim = d;

  std::array<std::vector<std::size_t>, 2> members;
  for (std::size_t i = 0; i < train.n; ++i)
    members[static_cast<std::size_t>(train.y[i])].push_back(i);

  for (std::size_t c = 0; c < 2; ++c) {
    std::size_t n_protos =
        std::min<std::size_t>(static_cast<std::size_t>(prototypes_per_class),
                              members[c].size());
    auto centers = kmeans_centers(train, members[c], n_protos);
    impl->prototypes.insert(impl->prototypes.end(), centers.begin(),
                            centers.end());
    impl->proto_label.insert(impl->proto_label.end(), n_protos,
                             static_cast<int>(c));
  }

  // One LVQ1 pass in data order: pull the winning prototype toward samples
  // of its own class, push it away otherwise.
  const double lr0 = 0.05;
  std::size_t n_protos = impl->proto_label.size();
  for (std::size_t i = 0; i < train.n; ++i) {
    double alpha =
        lr0 * (1.0 - static_cast<double>(i) / static_cast<double>(train.n));
    const double* x = train.row(i);
    double best = std::numeric_limits<double>::infinity();
    std::size_t winner = 0;
    for (std::size_t p = 0; p < n_protos; ++p) {
      double dist =
          kernels::squared_l2(x, impl->prototypes.data() + p * d, d);
      if (dist < best) {
        best = dist;
        winner = p;
      }
    }
    double signed_alpha =
        impl->proto_label[winner] == train.y[i] ? alpha : -alpha;
    kernels::lerp_toward(impl->prototypes.data() + winner * d, x,
                         signed_alpha, d);
  }
  return impl;
}

}  // namespace cvbench::detail
