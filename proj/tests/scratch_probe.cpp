// Temporary exploration driver for picking acceptance-test data settings.
#include <cstdio>
#include <vector>

#include "gpac/baselines.hpp"
#include "gpac/metrics.hpp"
#include "gpac/optimizer.hpp"
#include "gpac/synthetic.hpp"

using namespace gpac;

namespace {

std::vector<std::int64_t> argmax_labels(const FuzzyPartition& p) {
  std::vector<std::int64_t> out(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    auto row = p.row(i);
    std::size_t best = 0;
    for (std::size_t l = 1; l < p.c; ++l)
      if (row[l] > row[best]) best = l;
    out[i] = static_cast<std::int64_t>(best);
  }
  return out;
}

double masked_acc(const std::vector<std::int64_t>& pred,
                  const std::vector<std::int64_t>& truth,
                  const std::vector<std::uint8_t>& noise) {
  std::vector<std::int64_t> p, t;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (noise[i]) continue;
    p.push_back(pred[i]);
    t.push_back(truth[i]);
  }
  return acc(p, t);
}

}  // namespace

int main(int argc, char** argv) {
  double cluster_std = argc > 1 ? std::atof(argv[1]) : 1.0;
  double spacing = argc > 2 ? std::atof(argv[2]) : 6.0;
  std::size_t n = argc > 3 ? static_cast<std::size_t>(std::atol(argv[3])) : 2000;
  int seeds = argc > 4 ? std::atoi(argv[4]) : 10;

  BlobSpec spec;
  spec.n = n;
  spec.clusters = 4;
  spec.cluster_std = cluster_std;
  spec.center_spacing = spacing;
  spec.noise_fraction = 0.10;

  double sum_fcm = 0, sum_fcm_lcc = 0, sum_gpac = 0, sum_gpac_b0 = 0;
  for (int s = 0; s < seeds; ++s) {
    spec.seed = 1000 + s;
    std::vector<std::uint8_t> noise;
    Dataset data = make_blobs(spec, &noise);
    auto graph = build_knn_graph(data, 10);

    FcmResult fcm = fcm_fit(data, 4, 1.05, s);
    FcmResult flcc = fcm_lcc_fit(data, 4, 1.05, 1.0, graph, s);
    sum_fcm += masked_acc(argmax_labels(fcm.partition), data.labels, noise);
    sum_fcm_lcc += masked_acc(argmax_labels(flcc.partition), data.labels, noise);

    GpacConfig cfg;
    cfg.clusters = 4;
    cfg.seed = s;
    if (argc > 5) cfg.batch_size = static_cast<std::size_t>(std::atol(argv[5]));
    FitResult g = fit(data, cfg);
    sum_gpac += masked_acc(g.assignment.labels, data.labels, noise);

    GpacConfig cfg0 = cfg;
    cfg0.beta_max = 0.0;
    FitResult g0 = fit(data, cfg0);
    sum_gpac_b0 += masked_acc(g0.assignment.labels, data.labels, noise);
  }
  std::printf("std=%.2f spacing=%.1f n=%zu seeds=%d\n", cluster_std, spacing,
              n, seeds);
  std::printf("  fcm      %.4f\n", sum_fcm / seeds);
  std::printf("  fcm+lcc  %.4f\n", sum_fcm_lcc / seeds);
  std::printf("  gpac     %.4f\n", sum_gpac / seeds);
  std::printf("  gpac b0  %.4f\n", sum_gpac_b0 / seeds);
  return 0;
}
