#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "itinerary.hpp"
#include "map_core.hpp"

namespace henondim {

struct PeriodicOrbit {
  int period = 0;
  Itinerary itinerary;  // canonical rotation
  // points[k + 1] = g(points[k]); empty coordinates (zeros) for synthetic
  // libraries.
  std::vector<Complex2> points;
  double log_mult_u = 0.0;  // log |lambda^u(p)|, nats
  double mult_u_arg = 0.0;  // arg lambda^u(p), radians
  double residual = 0.0;    // max_k |g(points[k]) - points[k+1]|

  friend bool operator==(const PeriodicOrbit&, const PeriodicOrbit&) = default;
};

struct PeriodStatus {
  bool complete = false;
  std::uint64_t fixed_points = 0;  // distinct fixed points of g^n found
  std::optional<ErrorTag> failure;
  std::string message;

  friend bool operator==(const PeriodStatus&, const PeriodStatus&) = default;
};

struct OrbitLibrary {
  std::uint64_t fingerprint = 0;
  int degree = 2;
  double jac_mod = 1.0;
  int n_max = 0;
  bool synthetic = false;
  std::map<int, std::vector<PeriodicOrbit>> orbits;  // primitive, sorted by itinerary
  std::map<int, PeriodStatus> status;

  double log_jac_mod() const;
  std::uint64_t expected_count(int n) const;
  // Sum over m | n of m * #(primitive orbits of period m).
  std::uint64_t fixed_point_count(int n) const;
  // Complete at n means every period dividing n was enumerated completely.
  bool complete_at(int n) const;
  // Throws Error(incomplete_library) naming the underlying failure.
  void require_complete(int n) const;

  friend bool operator==(const OrbitLibrary&, const OrbitLibrary&) = default;
};

// Scalar form of a period-n cycle of an m-factor composition: a cyclic
// sequence u_0..u_{nm-1} with u_{j+1} = P_{j mod m}(u_j) + a_{j mod m} u_{j-1}.
// The cycle point k is (u_{km-1}, u_{km}).
struct OrbitSeed {
  Itinerary itinerary;
  std::vector<cplx> sequence;
  std::vector<Complex2> points;
};

struct OrbitOptions {
  int continuation_steps = 16;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  int jobs = 0;  // 0: hardware concurrency
};

// Inverse branch s of the factor polynomial: the root of P(w) = y nearest the
// s-th root of P (roots sorted by descending real, then imaginary part).
class InverseBranches {
 public:
  explicit InverseBranches(const HenonFactor& factor);
  const std::vector<cplx>& anchors() const { return anchors_; }
  cplx branch(cplx y, int symbol) const;

 private:
  std::vector<cplx> roots_of(cplx y) const;
  std::vector<cplx> coeffs_;
  std::vector<cplx> anchors_;
};

// Backward-iteration seed at the anti-integrable limit a = 0 for one word.
OrbitSeed seed_word(const HenonMap& g, const Itinerary& word);
// Seeds for all d^n words of length n, in lexicographic order.
std::vector<OrbitSeed> seed_itineraries(const HenonMap& g, int n);

struct Multipliers {
  double log_mult_u;
  double mult_u_arg;
  double log_mult_s;  // n log|a| - log_mult_u
};

Multipliers multipliers(const HenonMap& g, std::span<const Complex2> points);
// log |lambda^s| from the ordered product of inverse Jacobians along the
// backward orbit; independent of the determinant identity.
double stable_log_multiplier_direct(const HenonMap& g, std::span<const Complex2> points);

// Continuation from a = 0 to the target a, Newton at each step.
PeriodicOrbit refine_orbit(const HenonMap& g, const OrbitSeed& seed,
                           const OrbitOptions& opts = {});

OrbitLibrary enumerate_orbits(const HenonMap& g, int n_max, const OrbitOptions& opts = {});

}  // namespace henondim
