#include "pncert/quadrature.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

namespace pncert {

// Golub-Welsch on the Jacobi matrix of the shifted Legendre weight on [0,1]
// (alpha_k = 1/2, beta_k = k^2/(4(4k^2-1)), mu_0 = 1), with the last diagonal
// entry modified so that 1 becomes a node (Radau condition).
Quadrature gauss_radau(int m) {
  if (m < 2) throw std::invalid_argument("gauss_radau: m must be >= 2");
  std::vector<double> al(m, 0.5), be(m, 0.0);
  for (int k = 1; k < m; ++k) be[k] = k * k / (4.0 * (4.0 * k * k - 1.0));

  // p_{m-1}(1), p_{m-2}(1) of the monic orthogonal polynomials by recurrence
  double pm2 = 0.0, pm1 = 1.0;  // p_{-1}, p_0
  for (int k = 0; k < m - 1; ++k) {
    double p = (1.0 - al[k]) * pm1 - be[k] * pm2;
    pm2 = pm1;
    pm1 = p;
  }
  double astar = 1.0 - be[m - 1] * pm2 / pm1;

  std::vector<double> diag(al.begin(), al.end() - 1);
  diag.push_back(astar);
  std::vector<double> off(m - 1);
  for (int k = 1; k < m; ++k) off[k - 1] = std::sqrt(be[k]);

  std::vector<double> z(std::size_t(m) * m);
  int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, diag.data(), off.data(),
                           z.data(), m);
  if (info != 0) throw std::runtime_error("gauss_radau: dstev failed");

  Quadrature q;  // dstev returns eigenvalues ascending; endpoint 1 is last
  q.nodes = diag;
  q.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double v = z[std::size_t(i) * m];  // first component of i-th eigenvector
    q.weights[i] = v * v;              // mu_0 = 1
  }
  return q;
}

}  // namespace pncert
