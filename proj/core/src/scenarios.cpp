#include "pncert/scenarios.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pncert {

Scenario discrimination_scenario(int n_states, int n_trunc) {
  return {n_states, 1, n_states, n_trunc};
}

Scenario rac_scenario(int n_trunc) { return {4, 2, 2, n_trunc}; }

Scenario bpsk_scenario(int bins, int n_trunc) { return {2, 1, bins, n_trunc}; }

Witness discrimination_witness(int n_states) {
  Witness w;
  for (int x = 0; x < n_states; ++x)
    w.terms.push_back({x, x, 0, 1.0 / n_states});
  return w;
}

Witness rac_witness() {
  // states x = 2*x0 + x1 encode two bits; setting y asks for bit y
  Witness w;
  for (int x0 = 0; x0 < 2; ++x0)
    for (int x1 = 0; x1 < 2; ++x1)
      for (int y = 0; y < 2; ++y)
        w.terms.push_back({y == 0 ? x0 : x1, 2 * x0 + x1, y, 1.0 / 8});
  return w;
}

double evaluate_witness(const Witness& w, const Behavior& beh) {
  double v = 0;
  for (const auto& t : w.terms) v += t.c * beh.at(t.b, t.x, t.y);
  return v;
}

PhotonModel vacuum_bounds(int n_states, double omega) {
  PhotonModel m;
  m.kind = PhotonKind::ComponentBounds;
  m.w.assign(n_states, {1.0 - omega});
  return m;
}

PhotonModel component_bounds(std::vector<std::vector<double>> w) {
  PhotonModel m;
  m.kind = PhotonKind::ComponentBounds;
  m.w = std::move(w);
  return m;
}

PhotonModel component_pins(std::vector<std::vector<double>> w) {
  PhotonModel m;
  m.kind = PhotonKind::ComponentPins;
  m.w = std::move(w);
  return m;
}

PhotonModel truncated_mean_model(std::vector<double> mean, std::vector<double> mass) {
  PhotonModel m;
  m.kind = PhotonKind::TruncatedMean;
  m.mean = std::move(mean);
  m.mass = std::move(mass);
  return m;
}

PoissonComponents poisson_components(double alpha2, int n_trunc) {
  PoissonComponents pc;
  double pn = std::exp(-alpha2);
  for (int n = 0; n <= n_trunc; ++n) {
    if (n > 0) pn *= alpha2 / n;
    pc.p.push_back(pn);
    pc.trunc_mean += n * pn;
    pc.mass += pn;
  }
  return pc;
}

}  // namespace pncert
