#pragma once

#include "besselab/grid.hpp"

namespace besselab {

/// Forward transform with the symmetric (2pi)^{-n/2} normalization:
/// approximates F u(xi_j) = (2pi)^{-n/2} h^n sum_k u(x_k) exp(-i<xi_j, x_k>)
/// on the shifted frequency lattice. idft is its exact discrete inverse.
Field dft(const Field& u);
Field idft(const Field& v);

namespace serial {

/// Reference transforms: same arithmetic as the parallel kernels but built
/// on a recursive Cooley-Tukey core with no threading. Kept for testing and
/// for the kernel benchmark.
Field dft(const Field& u);
Field idft(const Field& v);

}  // namespace serial

}  // namespace besselab
