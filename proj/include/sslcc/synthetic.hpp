#pragma once

#include <cstdint>
#include <vector>

#include "sslcc/data_io.hpp"

namespace sslcc {

/// Homophilous attributed graph generator.
///
/// Each node draws a class (uniform, or from class_weights), then starts
/// `links_per_node` edges: with probability `homophily` to a uniformly
/// chosen node of the same class, otherwise to one of a different class.
/// Attributes are a per-class center (entries drawn from N(0, 1)) plus
/// N(0, attr_noise^2) noise in every dimension, so larger attr_noise means a
/// weaker attribute signal.
struct SyntheticOptions {
  std::size_t nodes = 500;
  std::size_t classes = 2;
  double homophily = 0.8;
  double attr_noise = 1.0;
  std::size_t attr_dims = 10;
  std::size_t links_per_node = 2;
  std::vector<double> class_weights;
  std::uint64_t seed = 1;
};

RawDataset generate_synthetic(const SyntheticOptions& options);

}  // namespace sslcc
