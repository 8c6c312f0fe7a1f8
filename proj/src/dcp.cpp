#include "hk/dcp.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace hk {

namespace {

std::string at_text(const Coords& x) {
  std::ostringstream os;
  os << "at (";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

Coords cross(const Coords& a, const Coords& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void normalize(Coords& v) {
  double n = 0;
  for (double c : v) n += c * c;
  n = std::sqrt(n);
  for (double& c : v) c /= n;
}

double dot(const Coords& a, const Coords& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// gamma(u, v) for a 2-form on a 3-chart.
double eval2(const Coords& gamma, const Coords& u, const Coords& v) {
  return gamma[0] * (u[0] * v[1] - u[1] * v[0]) + gamma[1] * (u[0] * v[2] - u[2] * v[0]) +
         gamma[2] * (u[1] * v[2] - u[2] * v[1]);
}

Matrix two_form_matrix(const Coords& w, int n) {
  Matrix m = Matrix::Zero(n, n);
  const auto& basis = form_basis(n, 2);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    m(basis[b][0], basis[b][1]) = w[b];
    m(basis[b][1], basis[b][0]) = -w[b];
  }
  return m;
}

double max_abs_diff(const Coords& a, const Coords& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

Coords solve_kernel_field(const Coords& alpha, const Coords& gamma, const Coords& beta) {
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(alpha[k]) < std::abs(alpha[axis])) axis = k;
  Coords u(3, 0.0);
  u[axis] = 1.0;
  Coords e1 = cross(alpha, u);
  normalize(e1);
  Coords e2 = cross(alpha, e1);
  normalize(e2);
  const double g12 = eval2(gamma, e1, e2);
  if (!(std::abs(g12) >= 1e-12)) throw Error("gamma is degenerate on the contact plane");
  const double a = dot(beta, e2) / g12;
  const double b = dot(beta, e1) / -g12;
  return {a * e1[0] + b * e2[0], a * e1[1] + b * e2[1], a * e1[2] + b * e2[2]};
}

PairGeometry solve_pair_geometry(const ContactPair& pair, const SampleSet& samples) {
  const ChartPtr chart = pair.chart;
  DifferentialForm gamma = exterior_derivative(pair.alpha_plus);
  gamma.label = "gamma";
  auto make_g = [&](const DifferentialForm& a, const char* label) {
    const VectorField r = reeb_field(a);
    const DifferentialForm a0 = pair.alpha_zero;
    return ScalarField{chart, [r, a0](const Coords& x) { return a0.apply(x, {r(x)}); }, {}, label};
  };
  ScalarField gp = make_g(pair.alpha_plus, "g+"), gm = make_g(pair.alpha_minus, "g-");
  DifferentialForm bp = subtract(pair.alpha_zero, multiply(gp, pair.alpha_plus));
  DifferentialForm bm = subtract(pair.alpha_zero, multiply(gm, pair.alpha_minus));
  bp.label = "beta+";
  bm.label = "beta-";
  auto make_z = [&](const DifferentialForm& a, const DifferentialForm& b, const char* label) {
    return make_field(
        chart,
        [a, b, gamma](const Coords& x) {
          try {
            return solve_kernel_field(a.coeffs(x), gamma.coeffs(x), b.coeffs(x));
          } catch (const Error& e) {
            throw Error(std::string(e.what()) + " " + at_text(x));
          }
        },
        {}, {}, label);
  };
  PairGeometry g{pair, gamma, gp, gm, bp, bm, make_z(pair.alpha_plus, bp, "Z+"),
                 make_z(pair.alpha_minus, bm, "Z-"), {}};

  const double tol = identity_tolerance({&pair.alpha_plus, &pair.alpha_minus});
  for (int s : {1, -1}) {
    const std::string tag = s > 0 ? "+" : "-";
    const VectorField& z = s > 0 ? g.z_plus : g.z_minus;
    const DifferentialForm& beta = s > 0 ? g.beta_plus : g.beta_minus;
    CertificateBuilder eq("pair-geometry:i_Z" + tag + "gamma=beta" + tag,
                          "i_{Z} gamma = beta = alpha^0 - g alpha", tol, samples.seed);
    CertificateBuilder mem("pair-geometry:Z" + tag + "-kernels",
                           "alpha^+(Z) = alpha^-(Z) = alpha^0(Z) = 0", 1e-8, samples.seed);
    for (const auto& x : samples.points) {
      if (!pair.in_overlap(x)) continue;
      try {
        const Coords zx = z(x);
        eq.residual(max_abs_diff(contract(3, 2, zx, gamma.coeffs(x)), beta.coeffs(x)), at_text(x));
        double m = 0;
        for (const auto* a : {&pair.alpha_plus, &pair.alpha_minus, &pair.alpha_zero})
          m = std::max(m, std::abs(dot(a->coeffs(x), zx)));
        mem.residual(m, at_text(x));
      } catch (const Error& e) {
        eq.failure(e.what());
        mem.failure(e.what());
      }
    }
    g.certificates.push_back(eq.finish());
    g.certificates.push_back(mem.finish());
  }
  return g;
}

void write_pair_geometry_csv(const PairGeometry& g, const SampleSet& samples, std::ostream& out) {
  const auto& names = g.pair.chart->coord_names;
  for (const auto& n : names) out << n << ",";
  out << "g_plus,g_minus";
  for (const auto& n : names) out << ",Zp_" << n;
  for (const auto& n : names) out << ",Zm_" << n;
  out << "\n";
  out.precision(12);
  for (const auto& x : samples.points) {
    if (!g.pair.in_overlap(x)) continue;
    for (double c : x) out << c << ",";
    out << g.g_plus(x) << "," << g.g_minus(x);
    for (double c : g.z_plus(x)) out << "," << c;
    for (double c : g.z_minus(x)) out << "," << c;
    out << "\n";
  }
}

VectorField counterpart_field(const PairGeometry& g, int which, const ChartPtr& cylinder) {
  if (which != 1 && which != -1) throw ParameterError("counterpart_field: which must be +1 or -1");
  const ScalarField gs = which > 0 ? g.g_plus : g.g_minus;
  const VectorField z = which > 0 ? g.z_plus : g.z_minus;
  const double s = -which;  // exponent sign
  const ContactPair pair = g.pair;
  return make_field(
      cylinder,
      [gs, z, s](const Coords& x) {
        const Coords base(x.begin() + 1, x.end());
        const double e = std::exp(s * x[0]);
        const Coords zx = z(base);
        Coords v{gs(base) * e - 1};
        for (double c : zx) v.push_back(e * c);
        return v;
      },
      {},
      [pair](const Coords& x) { return pair.in_overlap(Coords(x.begin() + 1, x.end())); },
      which > 0 ? "V-" : "V+");
}

Coords counterpart_along_slice(const Symplectization& s, const DifferentialForm& target,
                               const Coords& x) {
  Coords p{0.0};
  p.insert(p.end(), x.begin(), x.end());
  const int n = s.chart->dim();
  const Matrix w = two_form_matrix(s.omega.coeffs(p), n);
  const Coords a = target.coeffs(x);
  Matrix m = Matrix::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  // Row 0: omega(d/dt, V) = 0. Rows j >= 1: omega(V, e_j) = alpha(e_j).
  for (int i = 0; i < n; ++i) m(0, i) = w(0, i);
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < n; ++i) m(j, i) = w(i, j);
    rhs(j) = a[j - 1];
  }
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) throw Error("counterpart_along_slice: singular system " + at_text(x));
  Eigen::VectorXd v = lu.solve(rhs);
  return Coords(v.data(), v.data() + n);
}

Certificate verify_dcp(const DCPair& dcp, const ChartMap& surface,
                       const std::optional<DifferentialForm>& alpha_plus,
                       const std::optional<DifferentialForm>& alpha_minus,
                       const SampleSet& samples) {
  if (surface.target != dcp.omega.chart) throw Error("verify_dcp: surface must land in omega's chart");
  const int n = dcp.omega.dim();
  const DifferentialForm top = wedge(dcp.omega, dcp.omega);

  struct Side {
    const VectorField* v;
    const DifferentialForm* alpha;
    double sign;
    std::optional<DifferentialForm> lie, contraction;
  };
  std::vector<Side> sides;
  if (dcp.v_plus) sides.push_back({&*dcp.v_plus, alpha_plus ? &*alpha_plus : nullptr, 1.0, {}, {}});
  if (dcp.v_minus) sides.push_back({&*dcp.v_minus, alpha_minus ? &*alpha_minus : nullptr, -1.0, {}, {}});
  if (sides.empty()) throw ParameterError("verify_dcp: no fields");
  bool analytic = dcp.omega.analytic();
  for (auto& s : sides) {
    s.lie = lie_derivative(*s.v, dcp.omega);
    s.contraction = pullback(surface, interior_product(*s.v, dcp.omega));
    analytic = analytic && s.v->jac;
  }
  const double tol = analytic ? kTolAnalytic : kTolFiniteDiff;

  CertificateBuilder b("dcp", "L_{V±} omega = ±omega; i_{V±} omega|_M = alpha^±; omega(V+,V-) = 0; V± transverse",
                       tol, samples.seed);
  double lie_v = 0, contr_v = 0, lagr_v = 0, transverse_min = std::numeric_limits<double>::infinity();
  for (const auto& u : samples.points) {
    const std::string where = at_text(u);
    try {
      const Coords x = surface.eval(u);
      const Matrix j = surface.jacobian(u);
      std::vector<const Side*> defined;
      for (const auto& s : sides)
        if (s.v->defined_at(x)) defined.push_back(&s);
      if (defined.empty()) {
        b.failure("uncovered sample " + where);
        continue;
      }
      for (const Side* s : defined) {
        const Coords l = s->lie->coeffs(x), w = dcp.omega.coeffs(x);
        double r = 0;
        for (std::size_t k = 0; k < l.size(); ++k) r = std::max(r, std::abs(l[k] - s->sign * w[k]));
        lie_v = std::max(lie_v, r);
        b.residual(r, "Lie derivative " + where);
        if (s->alpha) {
          const double c = max_abs_diff(s->contraction->coeffs(u), s->alpha->coeffs(u));
          contr_v = std::max(contr_v, c);
          b.residual(c, "contraction " + where);
        }
        std::vector<Coords> frame{(*s->v)(x)};
        for (int k = 0; k < n - 1; ++k) {
          Coords col(n);
          for (int i = 0; i < n; ++i) col[i] = j(i, k);
          frame.push_back(col);
        }
        const double t = top.apply(x, frame);
        transverse_min = std::min(transverse_min, t);
        b.positive(t, "transversality " + where);
      }
      if (defined.size() == 2) {
        const double l = dcp.omega.apply(x, {(*defined[0]->v)(x), (*defined[1]->v)(x)});
        lagr_v = std::max(lagr_v, std::abs(l));
        b.residual(l, "Lagrangian " + where);
      }
    } catch (const Error& e) {
      b.failure(std::string(e.what()) + " " + where);
    }
  }
  b.param("lie_derivative_max", lie_v);
  b.param("contraction_max", contr_v);
  b.param("lagrangian_max", lagr_v);
  b.param("transversality_min", std::isfinite(transverse_min) ? nlohmann::json(transverse_min) : nlohmann::json());
  return b.finish();
}

GraphTransversality graph_transversality(const PairGeometry& g, const ScalarField& h, int sign,
                                         const SampleSet& samples) {
  if (sign != 1 && sign != -1) throw ParameterError("graph_transversality: sign must be +1 or -1");
  const ScalarField& gs = sign > 0 ? g.g_plus : g.g_minus;
  const VectorField& z = sign > 0 ? g.z_plus : g.z_minus;
  CertificateBuilder b(std::string("graph-transversality") + (sign > 0 ? "+" : "-"),
                       "e^{±h} < g^± - dh(Z^±)", 0.0, samples.seed);
  for (const auto& x : samples.points) {
    if (!g.pair.in_overlap(x)) continue;
    const double hx = h(x);  // undefined h propagates
    const Coords dh = h.gradient(x);
    b.positive(gs(x) - dot(dh, z(x)) - std::exp(sign * hx), at_text(x));
  }
  GraphTransversality out{b.finish(), g.pair.alpha_plus, g.pair.alpha_minus, g.pair.alpha_zero};
  const ChartPtr chart = g.pair.chart;
  ScalarField e{chart, [h, sign](const Coords& x) { return std::exp(sign * h(x)); }, {}, "e^h"};
  if (sign > 0) {
    out.alpha_plus = multiply(e, g.pair.alpha_plus);
    out.alpha_minus = subtract(g.pair.alpha_zero, out.alpha_plus);
  } else {
    out.alpha_minus = multiply(e, g.pair.alpha_minus);
    out.alpha_plus = subtract(g.pair.alpha_zero, out.alpha_minus);
  }
  return out;
}

}  // namespace hk
