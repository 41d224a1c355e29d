#pragma once
#include <optional>
#include <vector>

namespace pncert {

// Prepare-and-measure scenario shape.  States x = 0..n_states-1 are sent,
// setting y = 0..n_settings-1 is measured with outcomes b = 0..n_outcomes-1.
// Photon-number projectors s_n are tracked for n = 0..n_trunc.
struct Scenario {
  int n_states = 2;
  int n_settings = 1;
  int n_outcomes = 2;
  int n_trunc = 0;
};

Scenario discrimination_scenario(int n_states, int n_trunc = 0);
Scenario rac_scenario(int n_trunc = 0);          // 2->1 random access code
Scenario bpsk_scenario(int bins, int n_trunc = 0);

// Linear functional W = sum c_{b,x,y} p(b|x,y) on behaviors.
struct Witness {
  struct Term {
    int b, x, y;
    double c;
  };
  std::vector<Term> terms;
};

Witness discrimination_witness(int n_states);    // average success probability
Witness rac_witness();                           // average RAC success

// Conditional outcome table p(b|x,y), dense.
struct Behavior {
  int n_outcomes = 0, n_states = 0, n_settings = 0;
  std::vector<double> p;

  Behavior() = default;
  Behavior(int nb, int nx, int ny)
      : n_outcomes(nb), n_states(nx), n_settings(ny),
        p(std::size_t(nb) * nx * ny, 0.0) {}
  double& at(int b, int x, int y) {
    return p[(std::size_t(y) * n_states + x) * n_outcomes + b];
  }
  double at(int b, int x, int y) const {
    return p[(std::size_t(y) * n_states + x) * n_outcomes + b];
  }
};

double evaluate_witness(const Witness& w, const Behavior& beh);

// Photon-number statistics assumptions on the prepared states.
//  ComponentBounds:  <n|rho_x|n> >= w[x][n]
//  ComponentPins:    <n|rho_x|n>  = w[x][n]
//  TruncatedMean:    sum_n n <n|rho_x|n> <= mean[x]  and
//                    sum_n <n|rho_x|n> >= mass[x],   n = 0..n_trunc
enum class PhotonKind { ComponentBounds, ComponentPins, TruncatedMean };

struct PhotonModel {
  PhotonKind kind = PhotonKind::ComponentBounds;
  std::vector<std::vector<double>> w;   // bounds / pins, [x][n]
  std::vector<double> mean;             // TruncatedMean
  std::vector<double> mass;
};

// vacuum-overlap assumption <0|rho_x|0> >= 1-omega for every state
PhotonModel vacuum_bounds(int n_states, double omega);
PhotonModel component_bounds(std::vector<std::vector<double>> w);
PhotonModel component_pins(std::vector<std::vector<double>> w);
PhotonModel truncated_mean_model(std::vector<double> mean, std::vector<double> mass);

// Poisson photon-number components of a coherent state with mean photon
// number alpha2, truncated at n_trunc.
struct PoissonComponents {
  std::vector<double> p;   // p[n] = e^{-alpha2} alpha2^n / n!
  double trunc_mean = 0;   // sum n p[n]
  double mass = 0;         // sum p[n]
};
PoissonComponents poisson_components(double alpha2, int n_trunc);

// --- BPSK coherent states +-alpha read out by binned X-homodyne -------------
// Quadrature units: Gaussian mean +-sqrt(2)*alpha, variance 1/2.
// bins=2: b=0 is X>0.  bins=4: thresholds (-x1, 0, x1); bins=8: multiples of
// x1; outcomes ascending from the lowest interval.  x1 balances
// p(0|-alpha) = p(1|-alpha).
double erf_inv(double y);
double bpsk_x1(double alpha);
std::vector<double> bpsk_thresholds(double alpha, int bins);
Behavior bpsk_behavior(double alpha, int bins);   // x=0: +alpha, x=1: -alpha

}  // namespace pncert
