#include "gpac/synthetic.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gpac/rng.hpp"

namespace gpac {

Dataset make_blobs(const BlobSpec& spec,
                   std::vector<std::uint8_t>* noise_mask) {
  const std::size_t c = spec.clusters;
  const std::size_t d = spec.dim;
  if (c < 1 || d < 1 || spec.n < 2)
    throw InvalidArgument("blob spec needs n >= 2, clusters >= 1, dim >= 1");
  if (spec.noise_fraction < 0.0 || spec.noise_fraction >= 1.0)
    throw InvalidArgument("noise fraction must lie in [0, 1)");

  // centers on a grid with `side` points per axis
  std::size_t side = 1;
  while (true) {
    std::size_t cap = 1;
    for (std::size_t t = 0; t < d; ++t) cap *= side;
    if (cap >= c) break;
    ++side;
  }
  std::vector<double> centers(c * d, 0.0);
  for (std::size_t l = 0; l < c; ++l) {
    std::size_t rem = l;
    for (std::size_t t = 0; t < d; ++t) {
      centers[l * d + t] =
          static_cast<double>(rem % side) * spec.center_spacing;
      rem /= side;
    }
  }

  std::mt19937_64 g(spec.seed);
  const std::size_t noise =
      static_cast<std::size_t>(std::llround(spec.noise_fraction *
                                            static_cast<double>(spec.n)));
  const std::size_t clustered = spec.n - noise;

  std::vector<double> feats(spec.n * d);
  std::vector<std::int64_t> labels(spec.n);
  for (std::size_t i = 0; i < clustered; ++i) {
    const std::size_t l = i % c;
    labels[i] = static_cast<std::int64_t>(l);
    for (std::size_t t = 0; t < d; ++t)
      feats[i * d + t] =
          centers[l * d + t] + spec.cluster_std * rng::normal(g);
  }
  // background noise over the center bounding box inflated by 2 std
  const double lo = -2.0 * spec.cluster_std;
  const double hi =
      static_cast<double>(side - 1) * spec.center_spacing + 2.0 * spec.cluster_std;
  for (std::size_t i = clustered; i < spec.n; ++i) {
    for (std::size_t t = 0; t < d; ++t)
      feats[i * d + t] = lo + (hi - lo) * rng::uniform01(g);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < c; ++l) {
      double dist = 0.0;
      for (std::size_t t = 0; t < d; ++t) {
        double diff = feats[i * d + t] - centers[l * d + t];
        dist += diff * diff;
      }
      if (dist < best_d) {
        best_d = dist;
        best = l;
      }
    }
    labels[i] = static_cast<std::int64_t>(best);
  }

  std::vector<std::size_t> perm(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) perm[i] = i;
  rng::shuffle(perm, g);
  std::vector<double> shuffled_feats(spec.n * d);
  std::vector<std::int64_t> shuffled_labels(spec.n);
  if (noise_mask) noise_mask->assign(spec.n, 0);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const std::size_t src = perm[i];
    shuffled_labels[i] = labels[src];
    if (noise_mask && src >= clustered) (*noise_mask)[i] = 1;
    for (std::size_t t = 0; t < d; ++t)
      shuffled_feats[i * d + t] = feats[src * d + t];
  }
  return Dataset(std::move(shuffled_feats), spec.n, d,
                 std::move(shuffled_labels));
}

}  // namespace gpac
