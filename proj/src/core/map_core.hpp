#pragma once

// Compositions of generalized Henon maps
//
//     g_i(z, w) = (w, P_i(w) + a_i z)
//
// Factors are applied in list order: factor 0 acts first, so
// g(p) = g_m(...g_2(g_1(p))). Every downstream quantity (degree, |det Dg|,
// pressure) is insensitive to this choice.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace henondim {

using cplx = std::complex<double>;

// Modulus above which a point is considered to have left the region that
// contains the Julia set.
inline constexpr double kEscapeRadius = 1e8;

struct Complex2 {
  cplx z;
  cplx w;

  friend bool operator==(const Complex2&, const Complex2&) = default;
};

double max_norm(const Complex2& p);
double distance(const Complex2& p, const Complex2& q);

struct Jacobian2 {
  cplx a11, a12, a21, a22;

  cplx det() const { return a11 * a22 - a12 * a21; }
  cplx trace() const { return a11 + a22; }
  double max_abs() const;
  Complex2 apply(const Complex2& v) const;

  static Jacobian2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  friend Jacobian2 operator*(const Jacobian2& lhs, const Jacobian2& rhs);
  Jacobian2& operator*=(double s);
};

class HenonFactor {
 public:
  // coeffs are the coefficients of P in ascending degree order.
  // Throws Error(config) unless deg P >= 2, the leading coefficient is
  // nonzero and a != 0.
  HenonFactor(std::vector<cplx> coeffs, cplx a);

  // The anti-integrable limit a = 0, used only as the starting point of
  // continuation. Not a diffeomorphism.
  static HenonFactor degenerate(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx a() const { return a_; }

  cplx poly(cplx w) const;
  cplx dpoly(cplx w) const;

  HenonFactor with_a(cplx a) const;

  Complex2 apply(const Complex2& p) const { return {p.w, poly(p.w) + a_ * p.z}; }
  Jacobian2 jacobian(const Complex2& p) const { return {0.0, 1.0, a_, dpoly(p.w)}; }

  friend bool operator==(const HenonFactor&, const HenonFactor&) = default;

 private:
  HenonFactor() = default;
  std::vector<cplx> coeffs_;
  cplx a_{};
};

enum class VolumeClass { decreasing, preserving };

struct Characterization {
  int degree;
  double jac_mod;
  VolumeClass volume_class;
};

class HenonMap {
 public:
  explicit HenonMap(std::vector<HenonFactor> factors);

  const std::vector<HenonFactor>& factors() const { return factors_; }
  int degree() const { return degree_; }
  // Honest determinant of Dg: (-1)^m * prod a_i.
  cplx jac_det() const { return jac_det_; }
  double jac_mod() const { return jac_mod_; }
  bool degenerate() const { return jac_mod_ == 0.0; }

  // Same factor polynomials, every a_i multiplied by `scale`.
  HenonMap with_scaled_a(double scale) const;

  friend bool operator==(const HenonMap&, const HenonMap&) = default;

 private:
  std::vector<HenonFactor> factors_;
  int degree_ = 1;
  cplx jac_det_{1.0, 0.0};
  double jac_mod_ = 1.0;
};

// Throws Error(escaped) when a coordinate leaves the escape radius or turns
// non-finite.
Complex2 eval_map(const HenonMap& g, const Complex2& p);
Complex2 eval_inverse(const HenonMap& g, const Complex2& p);

Jacobian2 jacobian_at(const HenonMap& g, const Complex2& p);
// D(g^{-1}) evaluated at p, i.e. the inverse of Dg at g^{-1}(p).
Jacobian2 inverse_jacobian_at(const HenonMap& g, const Complex2& p);

// Throws Error(orientation) when |a| > 1; analyze g^{-1} instead.
Characterization characterize(const HenonMap& g);

std::string describe(const HenonMap& g);
// FNV-1a over a canonical 17-digit rendering of the factors.
std::uint64_t fingerprint(const HenonMap& g);
std::uint64_t fnv1a(std::string_view text);

}  // namespace henondim
