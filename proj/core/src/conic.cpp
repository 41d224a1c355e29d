#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pncert/sdpcore.hpp"

namespace pncert {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Inaccurate: return "inaccurate";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterLimit: return "iter_limit";
    case SolveStatus::Failed: return "failed";
    case SolveStatus::Unavailable: return "unavailable";
  }
  return "?";
}

ConicStd build_std(const ConicProblem& p) {
  ConicStd s;
  s.n = p.n_vars;
  s.n_zero = int(p.eq.size());
  s.n_nonneg = int(p.ge.size());
  long long m = s.n_zero + s.n_nonneg;
  for (const auto& blk : p.blocks) {
    s.sides.push_back(blk.side);
    m += (long long)blk.side * (blk.side + 1) / 2;
  }
  s.m = int(m);
  s.b.assign(s.m, 0.0);
  s.c.assign(s.n, 0.0);
  s.obj_sign = p.maximize ? -1.0 : 1.0;
  for (const auto& t : p.objective) s.c[t.var] += s.obj_sign * t.coef;

  struct Trip {
    int row, col;
    double v;
  };
  std::vector<Trip> trips;
  int row = 0;
  for (const auto& r : p.eq) {
    for (const auto& t : r.terms) trips.push_back({row, t.var, t.coef});
    s.b[row] = r.rhs;
    ++row;
  }
  for (const auto& r : p.ge) {  // a.x >= rhs  ->  -a.x + s = -rhs, s >= 0
    for (const auto& t : r.terms) trips.push_back({row, t.var, -t.coef});
    s.b[row] = -r.rhs;
    ++row;
  }
  const double rt2 = std::sqrt(2.0);
  for (const auto& blk : p.blocks) {  // s = svec(mat(x)): rows are -coef
    int d = blk.side;
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i <= j; ++i) {
        double sc = (i == j) ? 1.0 : rt2;
        for (const auto& t : blk.cells[std::size_t(i) * d + j])
          trips.push_back({row, t.var, -sc * t.coef});
        ++row;
      }
    }
  }

  std::sort(trips.begin(), trips.end(), [](const Trip& a, const Trip& b) {
    return std::pair(a.col, a.row) < std::pair(b.col, b.row);
  });
  s.colptr.assign(s.n + 1, 0);
  for (std::size_t k = 0; k < trips.size();) {
    std::size_t e = k;
    double v = 0;
    while (e < trips.size() && trips[e].col == trips[k].col && trips[e].row == trips[k].row)
      v += trips[e++].v;
    if (v != 0.0) {
      s.rowidx.push_back(trips[k].row);
      s.vals.push_back(v);
      ++s.colptr[trips[k].col + 1];
    }
    k = e;
  }
  for (int j = 0; j < s.n; ++j) s.colptr[j + 1] += s.colptr[j];
  return s;
}

std::vector<std::pair<std::string, double>> tagged_duals(const ConicProblem& p,
                                                         const Solution& s) {
  std::map<std::string, double> acc;
  for (std::size_t i = 0; i < p.eq.size() && i < s.eq_dual.size(); ++i)
    if (!p.eq[i].tag.empty()) acc[p.eq[i].tag] += s.eq_dual[i];
  for (std::size_t i = 0; i < p.ge.size() && i < s.ge_dual.size(); ++i)
    if (!p.ge[i].tag.empty()) acc[p.ge[i].tag] += s.ge_dual[i];
  return {acc.begin(), acc.end()};
}

}  // namespace pncert
