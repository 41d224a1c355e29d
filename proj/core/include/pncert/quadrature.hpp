#pragma once
#include <vector>

namespace pncert {

// Gauss-Radau rule on (0,1] with a node fixed at the right endpoint 1;
// exact for polynomials of degree <= 2m-2.  Nodes ascending, endpoint last.
struct Quadrature {
  std::vector<double> nodes, weights;
};

Quadrature gauss_radau(int m);

}  // namespace pncert
