#pragma once

#include <array>
#include <vector>

#include "perronkit/tensor.hpp"

namespace perronkit::fixtures {

/// Order 3, dimension 3: a_123 = a_213 = a_333 = 1. Its majorization matrix
/// is reducible, and the leading 2 x 2 principal sub-tensor is zero even
/// though the matching corner of the majorization matrix is not.
NonnegativeTensor coupled_triple();

/// Order 3, dimension 8: four dense 2 x 2 x 2 diagonal blocks on
/// {1,2}, {3,4}, {5,6}, {7,8} plus sparse couplings from the first three
/// blocks. Only {7,8} is genuine. Each coupling monomial c x_p x_q with
/// p <= q is stored as the single entry a_{i p q} = c.
NonnegativeTensor four_block_chain();

/// Diagonal block k of four_block_chain() as a standalone 2 x 2 x 2 tensor.
NonnegativeTensor four_block_chain_block(int k);

/// Values printed alongside the four-block chain: block radii, the overall
/// radius and a positive Perron vector computed with gamma = 0.5 and
/// tolerance 1e-6 in 52 iterations, final residual 9.2323e-7.
struct FourBlockReference {
  std::array<double, 4> block_radii{1.3183, 1.2581, 2.6317, 3.1253};
  double radius = 3.1253;
  std::array<double, 8> perron_vector{0.4462, 0.4143, 0.3808, 0.4446,
                                      0.2943, 0.3055, 0.5257, 0.4743};
  int iterations = 52;
  double residual = 9.2323e-7;
  double gamma = 0.5;
  double tolerance = 1e-6;
};

}  // namespace perronkit::fixtures
