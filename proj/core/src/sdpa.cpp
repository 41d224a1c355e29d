#include <algorithm>
#include <ostream>
#include <tuple>

#include "pncert/sdpcore.hpp"

namespace pncert {

// Sparse SDPA: min c'x s.t. X = sum_k x_k F_k - F_0 >= 0.  Maximization
// problems are exported negated (min of -objective); PSD blocks keep their
// cells as F_k entries, eq rows become +/- diagonal pairs, ge rows single
// diagonal entries, all in problem order.
void write_sdpa(std::ostream& os, const ConicProblem& p) {
  os << "* conic moment problem (" << (p.maximize ? "max, exported negated" : "min")
     << ")\n";
  int d_eq = int(p.eq.size()), d_ge = int(p.ge.size());
  int ndiag = 2 * d_eq + d_ge;
  int nblock = int(p.blocks.size()) + (ndiag > 0 ? 1 : 0);
  for (std::size_t i = 0; i < p.eq.size(); ++i)
    if (!p.eq[i].tag.empty())
      os << "* diag " << 2 * i + 1 << "," << 2 * i + 2 << " : " << p.eq[i].tag << "\n";
  for (std::size_t i = 0; i < p.ge.size(); ++i)
    if (!p.ge[i].tag.empty())
      os << "* diag " << 2 * d_eq + i + 1 << " : " << p.ge[i].tag << "\n";

  os << p.n_vars << "\n" << nblock << "\n";
  for (const auto& blk : p.blocks) os << blk.side << " ";
  if (ndiag > 0) os << -ndiag;
  os << "\n";

  std::vector<double> c(p.n_vars, 0.0);
  double sgn = p.maximize ? -1.0 : 1.0;
  for (const auto& t : p.objective) c[t.var] += sgn * t.coef;
  os.precision(17);
  for (int j = 0; j < p.n_vars; ++j) os << c[j] << (j + 1 < p.n_vars ? " " : "");
  os << "\n";

  auto emit = [&](int mat, int blk, int i, int j, double v) {
    if (v != 0.0) os << mat << " " << blk << " " << i << " " << j << " " << v << "\n";
  };
  int diag_blk = int(p.blocks.size()) + 1;

  // F0: only diagonal rhs entries (PSD cells carry no constant part)
  for (int i = 0; i < d_eq; ++i) {
    emit(0, diag_blk, 2 * i + 1, 2 * i + 1, p.eq[i].rhs);
    emit(0, diag_blk, 2 * i + 2, 2 * i + 2, -p.eq[i].rhs);
  }
  for (int i = 0; i < d_ge; ++i)
    emit(0, diag_blk, 2 * d_eq + i + 1, 2 * d_eq + i + 1, p.ge[i].rhs);

  // F_k entries grouped per variable: (block, i, j, value) keys sorted
  struct Ent {
    int blk, i, j;
    double v;
    bool operator<(const Ent& o) const {
      return std::tuple(blk, i, j) < std::tuple(o.blk, o.i, o.j);
    }
  };
  std::vector<std::vector<Ent>> per_var(p.n_vars);
  for (std::size_t bi = 0; bi < p.blocks.size(); ++bi) {
    const auto& blk = p.blocks[bi];
    int d = blk.side;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        for (const auto& t : blk.cells[std::size_t(i) * d + j])
          per_var[t.var].push_back({int(bi) + 1, i + 1, j + 1, t.coef});
  }
  for (int i = 0; i < d_eq; ++i)
    for (const auto& t : p.eq[i].terms) {
      per_var[t.var].push_back({diag_blk, 2 * i + 1, 2 * i + 1, t.coef});
      per_var[t.var].push_back({diag_blk, 2 * i + 2, 2 * i + 2, -t.coef});
    }
  for (int i = 0; i < d_ge; ++i)
    for (const auto& t : p.ge[i].terms)
      per_var[t.var].push_back({diag_blk, 2 * d_eq + i + 1, 2 * d_eq + i + 1, t.coef});

  for (int k = 0; k < p.n_vars; ++k) {
    auto& lst = per_var[k];
    std::stable_sort(lst.begin(), lst.end());
    for (std::size_t a = 0; a < lst.size();) {
      std::size_t e = a;
      double acc = 0;
      while (e < lst.size() && !(lst[a] < lst[e])) acc += lst[e++].v;
      emit(k + 1, lst[a].blk, lst[a].i, lst[a].j, acc);
      a = e;
    }
  }
}

}  // namespace pncert
