#include "orbits.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "parallel.hpp"
#include "text_format.hpp"

namespace henondim {

namespace {

constexpr double kSeedTol = 1e-10;
constexpr int kSeedMaxSweeps = 200;
constexpr double kHyperbolicMargin = 1e-6;
constexpr double kConditionLimit = 1e8;
constexpr double kDistinctTol = 1e-7;

bool finite(cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

bool anchor_order(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

// Per-factor digit of a composed-map symbol (mixed radix, factor 0 least
// significant).
std::vector<int> stage_digits(const HenonMap& g, const Itinerary& word) {
  const auto& fs = g.factors();
  const int m = static_cast<int>(fs.size());
  std::vector<int> digits(static_cast<std::size_t>(word.length()) * m);
  for (int k = 0; k < word.length(); ++k) {
    int s = word.word()[k];
    for (int i = 0; i < m; ++i) {
      digits[static_cast<std::size_t>(k) * m + i] = s % fs[i].degree();
      s /= fs[i].degree();
    }
  }
  return digits;
}

std::vector<Complex2> points_from_sequence(const std::vector<cplx>& u, int m) {
  const int N = static_cast<int>(u.size());
  const int n = N / m;
  std::vector<Complex2> pts(n);
  for (int k = 0; k < n; ++k) pts[k] = {u[(k * m - 1 + N) % N], u[k * m]};
  return pts;
}

struct EigenPair {
  cplx big;
  cplx small;
};

EigenPair eigen2(const Jacobian2& m) {
  const cplx tr = m.trace();
  const cplx det = m.det();
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  const cplx plus = 0.5 * (tr + disc);
  const cplx minus = 0.5 * (tr - disc);
  return std::abs(plus) >= std::abs(minus) ? EigenPair{plus, minus} : EigenPair{minus, plus};
}

// Ordered product with running rescaling; returns the rescaled product and the
// accumulated log of the removed scale.
template <class StepJacobian>
std::pair<Jacobian2, double> scaled_product(std::size_t count, StepJacobian&& step) {
  Jacobian2 m = Jacobian2::identity();
  double log_scale = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    m = step(k) * m;
    const double s = m.max_abs();
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorTag::non_hyperbolic, "degenerate Jacobian product");
    }
    m *= 1.0 / s;
    log_scale += std::log(s);
  }
  return {m, log_scale};
}

void newton_at_scale(const HenonMap& g, std::vector<cplx>& u, double scale, int step,
                     const OrbitOptions& opts, const Itinerary& word) {
  const auto& fs = g.factors();
  const int m = static_cast<int>(fs.size());
  const int N = static_cast<int>(u.size());
  Eigen::VectorXcd F(N);
  Eigen::MatrixXcd J(N, N);
  for (int iter = 0;; ++iter) {
    double res = 0.0, umax = 1.0;
    for (int j = 0; j < N; ++j) {
      const auto& f = fs[j % m];
      F[j] = f.poly(u[j]) + scale * f.a() * u[(j - 1 + N) % N] - u[(j + 1) % N];
      res = std::max(res, std::abs(F[j]));
      umax = std::max(umax, std::abs(u[j]));
    }
    if (res <= opts.newton_tol * umax) return;
    if (iter == opts.newton_max_iter) {
      throw Error(ErrorTag::newton_diverged,
                  "word " + word.to_string() + " (period " + std::to_string(word.length()) +
                      ") did not converge at continuation step " + std::to_string(step) +
                      ", residual " + fmt17(res));
    }
    J.setZero();
    for (int j = 0; j < N; ++j) {
      const auto& f = fs[j % m];
      J(j, j) += f.dpoly(u[j]);
      J(j, (j - 1 + N) % N) += scale * f.a();
      J(j, (j + 1) % N) -= 1.0;
    }
    const Eigen::VectorXcd delta = J.partialPivLu().solve(-F);
    for (int j = 0; j < N; ++j) {
      u[j] += delta[j];
      if (!finite(u[j]) || std::abs(u[j]) > kEscapeRadius) {
        throw Error(ErrorTag::newton_diverged,
                    "word " + word.to_string() + " escaped at continuation step " +
                        std::to_string(step));
      }
    }
  }
}

// Number of pairwise distinct points (max-norm separation above tol).
std::uint64_t count_distinct(std::vector<Complex2> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const Complex2& a, const Complex2& b) {
    return a.z.real() < b.z.real();
  });
  std::vector<bool> dup(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (dup[i]) continue;
    for (std::size_t j = i + 1; j < pts.size() && pts[j].z.real() - pts[i].z.real() <= tol; ++j) {
      if (!dup[j] && distance(pts[i], pts[j]) <= tol) dup[j] = true;
    }
  }
  return static_cast<std::uint64_t>(std::count(dup.begin(), dup.end(), false));
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

double OrbitLibrary::log_jac_mod() const { return std::log(jac_mod); }

std::uint64_t OrbitLibrary::expected_count(int n) const {
  return ipow(static_cast<std::uint64_t>(degree), n);
}

std::uint64_t OrbitLibrary::fixed_point_count(int n) const {
  std::uint64_t total = 0;
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    auto it = orbits.find(m);
    if (it != orbits.end()) total += static_cast<std::uint64_t>(m) * it->second.size();
  }
  return total;
}

bool OrbitLibrary::complete_at(int n) const {
  if (n < 1 || n > n_max) return false;
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    auto it = status.find(m);
    if (it == status.end() || !it->second.complete) return false;
  }
  return fixed_point_count(n) == expected_count(n);
}

void OrbitLibrary::require_complete(int n) const {
  if (complete_at(n)) return;
  std::string why = "period " + std::to_string(n) + " is not complete";
  if (n > n_max) why += " (library n_max = " + std::to_string(n_max) + ")";
  for (int m = 1; m <= std::min(n, n_max); ++m) {
    auto it = status.find(m);
    if (n % m == 0 && it != status.end() && it->second.failure) {
      why += "; period " + std::to_string(m) + ": " + it->second.message;
      break;
    }
  }
  throw Error(ErrorTag::incomplete_library, why);
}

InverseBranches::InverseBranches(const HenonFactor& factor) : coeffs_(factor.coeffs()) {
  anchors_ = roots_of(0.0);
  std::sort(anchors_.begin(), anchors_.end(), anchor_order);
}

std::vector<cplx> InverseBranches::roots_of(cplx y) const {
  const int d = static_cast<int>(coeffs_.size()) - 1;
  if (d == 2) {
    const cplx a = coeffs_[2], b = coeffs_[1], c = coeffs_[0] - y;
    const cplx disc = std::sqrt(b * b - 4.0 * a * c);
    // Cancellation-free pair.
    const cplx q = -0.5 * (std::real(std::conj(b) * disc) >= 0.0 ? b + disc : b - disc);
    if (q == cplx{}) return {0.0, 0.0};
    return {q / a, c / q};
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < d; ++k) {
    const cplx ck = k == 0 ? coeffs_[0] - y : coeffs_[k];
    companion(k, d - 1) = -ck / coeffs_[d];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  for (auto& r : roots) {
    for (int it = 0; it < 3; ++it) {
      cplx p = coeffs_[d], dp = 0.0;
      for (int k = d - 1; k >= 0; --k) {
        dp = dp * r + p;
        p = p * r + coeffs_[k];
      }
      p -= y;
      if (dp == cplx{}) break;
      r -= p / dp;
    }
  }
  return roots;
}

cplx InverseBranches::branch(cplx y, int symbol) const {
  const auto roots = roots_of(y);
  const cplx anchor = anchors_.at(static_cast<std::size_t>(symbol));
  return *std::min_element(roots.begin(), roots.end(), [&](cplx a, cplx b) {
    return std::abs(a - anchor) < std::abs(b - anchor);
  });
}

OrbitSeed seed_word(const HenonMap& g, const Itinerary& word) {
  const auto& fs = g.factors();
  const int m = static_cast<int>(fs.size());
  if (word.alphabet() != g.degree()) {
    throw Error(ErrorTag::invalid_argument, "itinerary alphabet does not match the map degree");
  }
  std::vector<InverseBranches> branches;
  branches.reserve(m);
  for (const auto& f : fs) branches.emplace_back(f);

  const auto digits = stage_digits(g, word);
  const int N = static_cast<int>(digits.size());
  std::vector<cplx> u(N);
  for (int j = 0; j < N; ++j) u[j] = branches[j % m].anchors()[digits[j]];

  double change = 0.0;
  for (int sweep = 0; sweep < kSeedMaxSweeps; ++sweep) {
    change = 0.0;
    double scale = 1.0;
    for (int j = N - 1; j >= 0; --j) {
      const cplx next = branches[j % m].branch(u[(j + 1) % N], digits[j]);
      if (!finite(next) || std::abs(next) > kEscapeRadius) {
        throw Error(ErrorTag::seeding_diverged, "word " + word.to_string() + " escaped");
      }
      change = std::max(change, std::abs(next - u[j]));
      scale = std::max(scale, std::abs(next));
      u[j] = next;
    }
    if (change <= 4e-16 * scale) break;
  }
  if (!(change <= kSeedTol)) {
    throw Error(ErrorTag::seeding_diverged,
                "word " + word.to_string() + " backward iteration failed to contract (last change " +
                    fmt17(change) + ")");
  }
  return {word, u, points_from_sequence(u, m)};
}

std::vector<OrbitSeed> seed_itineraries(const HenonMap& g, int n) {
  if (n < 1) throw Error(ErrorTag::invalid_argument, "period must be positive");
  const int d = g.degree();
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(d), n);
  std::vector<OrbitSeed> seeds;
  seeds.reserve(total);
  std::vector<std::uint8_t> w(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (int k = n - 1; k >= 0; --k) {
      w[k] = static_cast<std::uint8_t>(rest % d);
      rest /= d;
    }
    seeds.push_back(seed_word(g, Itinerary(w, d)));
  }
  return seeds;
}

Multipliers multipliers(const HenonMap& g, std::span<const Complex2> points) {
  const std::size_t n = points.size();
  if (n == 0) throw Error(ErrorTag::invalid_argument, "empty cycle");
  const auto [m, log_scale] =
      scaled_product(n, [&](std::size_t k) { return jacobian_at(g, points[k]); });
  const auto eig = eigen2(m);
  const double sep = std::abs(eig.big - eig.small);
  if (!(sep > 0.0) || m.max_abs() / sep > kConditionLimit) {
    throw Error(ErrorTag::non_hyperbolic, "eigenvalues of Dg^n are not separated");
  }
  const double log_u = log_scale + std::log(std::abs(eig.big));
  const double log_s = static_cast<double>(n) * std::log(g.jac_mod()) - log_u;
  if (g.jac_mod() > 0.0) {
    // The rescaled determinant must match det(Dg)^n e^{-2 log_scale}; compare
    // against the size of the two products that form it.
    const cplx expected = std::pow(g.jac_det(), static_cast<double>(n)) * std::exp(-2.0 * log_scale);
    const double size = std::max(std::abs(m.a11 * m.a22), std::abs(m.a12 * m.a21));
    if (std::abs(m.det() - expected) > 1e-8 * std::max(size, std::abs(expected))) {
      throw Error(ErrorTag::non_hyperbolic, "Jacobian product disagrees with det(Dg)^n");
    }
  }
  if (!(std::abs(log_u) >= kHyperbolicMargin)) {
    throw Error(ErrorTag::non_hyperbolic, "unstable multiplier modulus within 1e-6 of 1");
  }
  return {log_u, std::arg(eig.big), log_s};
}

double stable_log_multiplier_direct(const HenonMap& g, std::span<const Complex2> points) {
  const std::size_t n = points.size();
  if (n == 0) throw Error(ErrorTag::invalid_argument, "empty cycle");
  // Backward orbit p_0, p_{n-1}, ..., p_1.
  const auto [m, log_scale] = scaled_product(n, [&](std::size_t k) {
    return inverse_jacobian_at(g, points[(n - k) % n]);
  });
  return -(log_scale + std::log(std::abs(eigen2(m).big)));
}

PeriodicOrbit refine_orbit(const HenonMap& g, const OrbitSeed& seed, const OrbitOptions& opts) {
  const int m = static_cast<int>(g.factors().size());
  const int n = seed.itinerary.length();
  if (static_cast<int>(seed.sequence.size()) != n * m) {
    throw Error(ErrorTag::invalid_argument, "seed length does not match the period");
  }
  std::vector<cplx> u = seed.sequence;
  if (g.degenerate()) {
    newton_at_scale(g, u, 0.0, 0, opts, seed.itinerary);
  } else {
    const int steps = std::max(1, opts.continuation_steps);
    for (int step = 1; step <= steps; ++step) {
      newton_at_scale(g, u, std::ldexp(1.0, step - steps), step, opts, seed.itinerary);
    }
  }

  auto pts = points_from_sequence(u, m);
  double residual = 0.0;
  for (int k = 0; k < n; ++k) {
    residual = std::max(residual, distance(eval_map(g, pts[k]), pts[(k + 1) % n]));
  }
  const auto mult = multipliers(g, pts);
  if (!(mult.log_mult_s <= -kHyperbolicMargin)) {
    throw Error(ErrorTag::non_hyperbolic, "stable multiplier modulus within 1e-6 of 1");
  }

  PeriodicOrbit orbit;
  orbit.period = n;
  const int shift = seed.itinerary.canonical_shift();
  orbit.itinerary = seed.itinerary.rotated(shift);
  std::rotate(pts.begin(), pts.begin() + shift, pts.end());
  orbit.points = std::move(pts);
  orbit.log_mult_u = mult.log_mult_u;
  orbit.mult_u_arg = mult.mult_u_arg;
  orbit.residual = residual;
  return orbit;
}

OrbitLibrary enumerate_orbits(const HenonMap& g, int n_max, const OrbitOptions& opts) {
  if (n_max < 1) throw Error(ErrorTag::invalid_argument, "n_max must be at least 1");
  OrbitLibrary lib;
  lib.fingerprint = fingerprint(g);
  lib.degree = g.degree();
  lib.jac_mod = g.jac_mod();
  lib.n_max = n_max;

  for (int n = 1; n <= n_max; ++n) {
    const auto words = canonical_words(g.degree(), n);
    struct Slot {
      std::optional<PeriodicOrbit> orbit;
      std::optional<Error> error;
    };
    std::vector<Slot> slots(words.size());
    parallel_for(words.size(), opts.jobs, [&](std::size_t i) {
      try {
        slots[i].orbit = refine_orbit(g, seed_word(g, words[i]), opts);
      } catch (const Error& e) {
        slots[i].error = e;
      }
    });

    PeriodStatus st;
    auto& store = lib.orbits[n];
    for (std::size_t i = 0; i < words.size() && !st.failure; ++i) {
      if (slots[i].error) {
        st.failure = slots[i].error->tag();
        st.message = slots[i].error->what();
        break;
      }
      const auto& orbit = *slots[i].orbit;
      const int prim = words[i].primitive_period();
      if (prim == n) {
        store.push_back(orbit);
        continue;
      }
      // Repetition: must land on the stored primitive orbit of period prim.
      const auto& lower = lib.orbits[prim];
      const Itinerary root(std::vector<std::uint8_t>(words[i].word().begin(),
                                                     words[i].word().begin() + prim),
                           g.degree());
      auto it = std::lower_bound(lower.begin(), lower.end(), root,
                                 [](const PeriodicOrbit& o, const Itinerary& w) { return o.itinerary < w; });
      if (it == lower.end() || it->itinerary != root ||
          distance(it->points[0], orbit.points[0]) > 1e-8) {
        st.failure = ErrorTag::newton_diverged;
        st.message = "newton-diverged: repetition " + words[i].to_string() +
                     " did not reproduce its primitive orbit";
      }
    }

    if (!st.failure) {
      std::vector<Complex2> fixed;
      for (int m = 1; m <= n; ++m) {
        if (n % m != 0) continue;
        for (const auto& o : lib.orbits[m]) fixed.insert(fixed.end(), o.points.begin(), o.points.end());
      }
      st.fixed_points = count_distinct(std::move(fixed), kDistinctTol);
      st.complete = st.fixed_points == lib.expected_count(n);
      if (!st.complete) {
        st.failure = ErrorTag::newton_diverged;
        st.message = "newton-diverged: found " + std::to_string(st.fixed_points) +
                     " distinct fixed points of g^" + std::to_string(n) + ", expected " +
                     std::to_string(lib.expected_count(n));
      }
    }
    lib.status[n] = std::move(st);
  }
  return lib;
}

}  // namespace henondim
