#ifndef GPAC_SYNTHETIC_HPP
#define GPAC_SYNTHETIC_HPP

#include <cstdint>

#include "gpac/types.hpp"

namespace gpac {

/// Isotropic Gaussian blobs with centers on an axis-aligned grid.
struct BlobSpec {
  std::size_t n = 2000;         // total points including noise
  std::size_t clusters = 4;
  std::size_t dim = 2;
  double cluster_std = 1.0;
  double center_spacing = 8.0;  // grid step between adjacent centers
  double noise_fraction = 0.0;  // uniform background points, in [0, 1)
  std::uint64_t seed = 0;
};

/// Labeled blob dataset; noise points take the label of the nearest center
/// so metrics stay defined over every sample. Rows are shuffled. When
/// noise_mask is given it receives one flag per output row (1 = background
/// noise), letting callers evaluate on the clustered points alone.
Dataset make_blobs(const BlobSpec& spec,
                   std::vector<std::uint8_t>* noise_mask = nullptr);

}  // namespace gpac

#endif  // GPAC_SYNTHETIC_HPP
