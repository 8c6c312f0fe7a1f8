#include <cmath>
#include <sstream>

#include "hk/surgery.hpp"

namespace hk {

std::string Framing::str() const {
  std::ostringstream os;
  os << "F_" << reference << (offset < 0 ? " - " : " + ") << std::labs(offset);
  return os.str();
}

Framing shift_coordinates(const Framing& f, long k) {
  Framing out = f;
  out.offset = f.offset + k;
  return out;
}

StructuralData shift_framing(const StructuralData& data, long k) {
  if (!data.well_behaved()) throw ParameterError("shift_framing: data " + data.str() + " is not well-behaved");
  const Rational kq(k);
  return StructuralData{data.A - data.B * kq, data.B, data.C, data.D + data.C * kq};
}

bool is_fat(double r_max, long n) { return std::exp(static_cast<double>(n)) <= r_max; }

bool positivity_wrt_fibration(const Slope& s_p, long s_F) { return s_p && Rational(s_F) > *s_p; }

std::string to_string(const Slope& s) { return s ? to_string(*s) : std::string("inf"); }

std::optional<Rational> rational_approximation(double x, double tol, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents p_k / q_k of the continued fraction of x.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(rest);
    if (std::abs(a) > 1e15) break;
    const long long ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    if (std::abs(static_cast<double>(p2) / static_cast<double>(q2) - x) <= tol) return Rational(p2, q2);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = rest - a;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return std::nullopt;
}

namespace {

Rational exact_or_nearby(double x) {
  if (auto q = rational_approximation(x, 1e-6, 10000)) return *q;
  return Rational(x);
}

}  // namespace

DerivedData derive_structural_data(const DifferentialForm& alpha_plus, const DifferentialForm& alpha_zero,
                                   const SampleSet& samples) {
  if (samples.points.empty()) throw ParameterError("derive_structural_data: no samples");
  const VectorField reeb = reeb_field(alpha_plus);
  CertificateBuilder b("derive-structural-data", "R_{alpha+} = A d/dmu + B d/dlambda, alpha^0 = C dmu + D dlambda",
                       1e-6, samples.seed);
  Coords first;
  double spread = 0;
  std::string worst;
  for (const auto& x : samples.points) {
    const Coords r = reeb(x), z = alpha_zero(x);
    const Coords v{r[0], r[1], r[2], z[0], z[1], z[2]};
    if (first.empty()) first = v;
    double s = std::max(std::abs(v[0]), std::abs(v[3]));
    for (int k : {1, 2, 4, 5}) s = std::max(s, std::abs(v[k] - first[k]));
    if (s > spread) {
      spread = s;
      std::ostringstream os;
      os << "at (" << x[0] << ", " << x[1] << ", " << x[2] << ")";
      worst = os.str();
    }
    b.residual(s, worst);
  }
  if (spread > 1e-6) {
    std::ostringstream os;
    os << "not well-behaved: coefficients vary by " << spread << " " << worst;
    throw Error(os.str());
  }
  DerivedData out;
  out.data = StructuralData{exact_or_nearby(first[1]), exact_or_nearby(first[2]), exact_or_nearby(first[4]),
                            exact_or_nearby(first[5])};
  if (out.data.B < 0 && out.data.C < 0) {
    out.data = StructuralData{-out.data.A, -out.data.B, -out.data.C, -out.data.D};
    out.orientation_flipped = true;
  }
  b.param("A", to_string(out.data.A));
  b.param("B", to_string(out.data.B));
  b.param("C", to_string(out.data.C));
  b.param("D", to_string(out.data.D));
  b.param("orientation_flipped", out.orientation_flipped);
  out.certificate = b.finish();
  return out;
}

}  // namespace hk
