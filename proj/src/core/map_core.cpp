#include "map_core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "errors.hpp"
#include "text_format.hpp"

namespace henondim {

namespace {

bool finite(cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

void check_escape(const Complex2& p, const char* where) {
  if (!finite(p.z) || !finite(p.w) || std::abs(p.z) > kEscapeRadius ||
      std::abs(p.w) > kEscapeRadius) {
    throw Error(ErrorTag::escaped, std::string(where) + ": orbit left the region of interest");
  }
}

void validate_coeffs(const std::vector<cplx>& coeffs) {
  for (const auto& c : coeffs) {
    if (!finite(c)) throw Error(ErrorTag::config, "non-finite polynomial coefficient");
  }
  if (coeffs.size() < 3) {
    throw Error(ErrorTag::config, "polynomial degree must be at least 2");
  }
  if (coeffs.back() == cplx{}) {
    throw Error(ErrorTag::config, "leading polynomial coefficient is zero");
  }
}

}  // namespace

double max_norm(const Complex2& p) { return std::max(std::abs(p.z), std::abs(p.w)); }

double distance(const Complex2& p, const Complex2& q) {
  return std::max(std::abs(p.z - q.z), std::abs(p.w - q.w));
}

double Jacobian2::max_abs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

Complex2 Jacobian2::apply(const Complex2& v) const {
  return {a11 * v.z + a12 * v.w, a21 * v.z + a22 * v.w};
}

Jacobian2 operator*(const Jacobian2& l, const Jacobian2& r) {
  return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
          l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

Jacobian2& Jacobian2::operator*=(double s) {
  a11 *= s;
  a12 *= s;
  a21 *= s;
  a22 *= s;
  return *this;
}

HenonFactor::HenonFactor(std::vector<cplx> coeffs, cplx a) : coeffs_(std::move(coeffs)), a_(a) {
  validate_coeffs(coeffs_);
  if (!finite(a_)) throw Error(ErrorTag::config, "non-finite jacobian parameter a");
  if (a_ == cplx{}) throw Error(ErrorTag::config, "jacobian parameter a must be nonzero");
}

HenonFactor HenonFactor::degenerate(std::vector<cplx> coeffs) {
  validate_coeffs(coeffs);
  HenonFactor f;
  f.coeffs_ = std::move(coeffs);
  f.a_ = 0.0;
  return f;
}

cplx HenonFactor::poly(cplx w) const {
  cplx acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

cplx HenonFactor::dpoly(cplx w) const {
  const int d = degree();
  cplx acc = coeffs_[d] * static_cast<double>(d);
  for (int k = d - 1; k >= 1; --k) acc = acc * w + coeffs_[k] * static_cast<double>(k);
  return acc;
}

HenonFactor HenonFactor::with_a(cplx a) const {
  HenonFactor f = *this;
  f.a_ = a;
  return f;
}

HenonMap::HenonMap(std::vector<HenonFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorTag::config, "a Henon map needs at least one factor");
  for (const auto& f : factors_) {
    degree_ *= f.degree();
    jac_det_ *= -f.a();
    jac_mod_ *= std::abs(f.a());
  }
}

HenonMap HenonMap::with_scaled_a(double scale) const {
  std::vector<HenonFactor> scaled;
  scaled.reserve(factors_.size());
  for (const auto& f : factors_) {
    scaled.push_back(scale == 0.0 ? HenonFactor::degenerate(f.coeffs()) : f.with_a(f.a() * scale));
  }
  return HenonMap(std::move(scaled));
}

Complex2 eval_map(const HenonMap& g, const Complex2& p) {
  check_escape(p, "eval_map");
  Complex2 q = p;
  for (const auto& f : g.factors()) {
    q = f.apply(q);
    check_escape(q, "eval_map");
  }
  return q;
}

Complex2 eval_inverse(const HenonMap& g, const Complex2& p) {
  check_escape(p, "eval_inverse");
  Complex2 q = p;
  const auto& fs = g.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    q = {(q.w - it->poly(q.z)) / it->a(), q.z};
    check_escape(q, "eval_inverse");
  }
  return q;
}

Jacobian2 jacobian_at(const HenonMap& g, const Complex2& p) {
  Jacobian2 m = Jacobian2::identity();
  Complex2 q = p;
  for (const auto& f : g.factors()) {
    m = f.jacobian(q) * m;
    q = f.apply(q);
  }
  return m;
}

Jacobian2 inverse_jacobian_at(const HenonMap& g, const Complex2& p) {
  Jacobian2 m = Jacobian2::identity();
  Complex2 q = p;
  const auto& fs = g.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    const cplx inv_a = 1.0 / it->a();
    m = Jacobian2{-it->dpoly(q.z) * inv_a, inv_a, 1.0, 0.0} * m;
    q = {(q.w - it->poly(q.z)) * inv_a, q.z};
  }
  return m;
}

Characterization characterize(const HenonMap& g) {
  const double mod = g.jac_mod();
  if (mod > 1.0 + 1e-12) {
    throw Error(ErrorTag::orientation,
                "|det Dg| = " + fmt17(mod) + " > 1; analyze the inverse map instead");
  }
  const auto cls = std::abs(mod - 1.0) < 1e-12 ? VolumeClass::preserving : VolumeClass::decreasing;
  return {g.degree(), mod, cls};
}

std::string describe(const HenonMap& g) {
  std::string out = "henon";
  for (const auto& f : g.factors()) {
    out += ";P=";
    for (const auto& c : f.coeffs()) out += fmt17(c.real()) + "," + fmt17(c.imag()) + ",";
    out += "a=" + fmt17(f.a().real()) + "," + fmt17(f.a().imag());
  }
  return out;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fingerprint(const HenonMap& g) { return fnv1a(describe(g)); }

}  // namespace henondim
