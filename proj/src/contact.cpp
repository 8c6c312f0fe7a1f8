#include "hk/contact.hpp"

#include <cmath>
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

SampleSet subset(const SampleSet& s, const Predicate& keep) {
  SampleSet out{s.chart, {}, s.seed};
  for (const auto& x : s.points)
    if (keep(x)) out.points.push_back(x);
  return out;
}

Certificate top_degree_positive(const std::string& name, const std::string& anchor,
                                const DifferentialForm& top, double sign, const SampleSet& samples,
                                bool analytic) {
  CertificateBuilder b(name, anchor, 0.0, samples.seed);
  b.param("sign", sign);
  b.param("mode", analytic ? "analytic" : "finite-difference");
  for (const auto& x : samples.points) {
    try {
      const double v = top.coeffs(x)[0];
      if (std::abs(v) < 1e-12) {
        b.failure("degenerate " + at_text(x));
        continue;
      }
      b.positive(sign * v, at_text(x));
    } catch (const Error& e) {
      b.failure(e.what());
    }
  }
  return b.finish();
}

Coords cross(const Coords& a, const Coords& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Coords& a, const Coords& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Coords& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double identity_tolerance(std::initializer_list<const DifferentialForm*> forms) {
  for (const auto* f : forms)
    if (!f->analytic()) return kTolFiniteDiff;
  return kTolAnalytic;
}

Certificate check_contact(const DifferentialForm& alpha, int sign, const SampleSet& samples) {
  if (alpha.degree != 1 || alpha.dim() != 3)
    throw Error("check_contact: need a 1-form on a 3-dimensional chart");
  if (sign != 1 && sign != -1) throw ParameterError("check_contact: sign must be +1 or -1");
  const DifferentialForm top = wedge(alpha, exterior_derivative(alpha));
  return top_degree_positive("contact" + std::string(sign > 0 ? "+" : "-") + ":" + alpha.label,
                             "sign * alpha ^ d alpha > 0", top, sign, samples, alpha.analytic());
}

Certificate check_contact(const DifferentialForm& alpha, int sign, const ChartMap& surface,
                          const SampleSet& samples) {
  if (surface.source->dim() != 3) throw Error("check_contact: hypersurface must be 3-dimensional");
  return check_contact(pullback(surface, alpha), sign, samples);
}

VectorField reeb_field(const DifferentialForm& alpha) {
  if (alpha.degree != 1 || alpha.dim() % 2 == 0)
    throw Error("reeb_field: need a 1-form on an odd-dimensional chart");
  const DifferentialForm da = exterior_derivative(alpha);
  const int n = alpha.dim();
  const auto& basis = form_basis(n, 2);
  auto solve = [alpha, da, n, basis](const Coords& x) {
    const Coords a = alpha.coeffs(x);
    const Coords w = da.coeffs(x);
    Matrix m = Matrix::Zero(n + 1, n);
    // Row j: (iota_R d alpha)(e_j) = sum_i R^i d alpha(e_i, e_j).
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const int i = basis[b][0], j = basis[b][1];
      m(j, i) += w[b];
      m(i, j) -= w[b];
    }
    for (int i = 0; i < n; ++i) m(n, i) = a[i];
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = 1.0;
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cond = s(0) / s(n - 1);
    if (!(cond <= 1e10))
      throw Error("reeb_field: singular system for " + alpha.label + " " + at_text(x));
    Eigen::VectorXd r = svd.solve(rhs);
    return Coords(r.data(), r.data() + n);
  };
  return make_field(alpha.chart, solve, {}, {}, "R[" + alpha.label + "]");
}

std::vector<Certificate> certify_contact_pair(const ContactPair& p, const SampleSet& samples) {
  std::vector<Certificate> certs;
  for (const auto& x : samples.points)
    if (!p.in_plus(x) && !p.in_minus(x))
      throw Error("make_contact_pair: sample " + at_text(x) + " lies in neither domain");
  const SampleSet plus = subset(samples, p.in_plus);
  const SampleSet minus = subset(samples, p.in_minus);
  const SampleSet zero = subset(samples, [&p](const Coords& x) { return p.in_overlap(x); });

  certs.push_back(check_contact(p.alpha_plus, 1, plus));
  certs.push_back(check_contact(p.alpha_minus, -1, minus));

  const DifferentialForm dplus = exterior_derivative(p.alpha_plus);
  const DifferentialForm dminus = exterior_derivative(p.alpha_minus);
  const DifferentialForm dzero = exterior_derivative(p.alpha_zero);
  const double tol = identity_tolerance({&p.alpha_plus, &p.alpha_minus});
  CertificateBuilder match("pair:d-alpha-match", "-d alpha^- = d alpha^+", tol, samples.seed);
  CertificateBuilder closed("pair:alpha-zero-closed", "d alpha^0 = 0", tol, samples.seed);
  CertificateBuilder reeb_plus("pair:alpha-zero-reeb+", "alpha^0(R_{alpha^+}) > 1", 0.0,
                               samples.seed);
  CertificateBuilder reeb_minus("pair:alpha-zero-reeb-", "alpha^0(R_{alpha^-}) > 1", 0.0,
                                samples.seed);
  const VectorField rp = reeb_field(p.alpha_plus);
  const VectorField rm = reeb_field(p.alpha_minus);
  for (const auto& x : zero.points) {
    try {
      const Coords u = dplus.coeffs(x), v = dminus.coeffs(x);
      double worst = 0;
      for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(u[i] + v[i]));
      match.residual(worst, at_text(x));
      const Coords z = dzero.coeffs(x);
      double zw = 0;
      for (double c : z) zw = std::max(zw, std::abs(c));
      closed.residual(zw, at_text(x));
    } catch (const Error& e) {
      match.failure(e.what());
      closed.failure(e.what());
    }
    try {
      reeb_plus.positive(p.alpha_zero.apply(x, {rp(x)}) - 1.0, at_text(x));
    } catch (const Error& e) {
      reeb_plus.failure(e.what());
    }
    try {
      reeb_minus.positive(p.alpha_zero.apply(x, {rm(x)}) - 1.0, at_text(x));
    } catch (const Error& e) {
      reeb_minus.failure(e.what());
    }
  }
  certs.push_back(match.finish());
  certs.push_back(closed.finish());
  certs.push_back(reeb_plus.finish());
  certs.push_back(reeb_minus.finish());
  return certs;
}

ContactPair make_contact_pair(const DifferentialForm& alpha_plus,
                              const DifferentialForm& alpha_minus, Predicate in_plus,
                              Predicate in_minus, const SampleSet& samples) {
  if (alpha_plus.dim() != 3 || alpha_plus.degree != 1 || alpha_minus.degree != 1)
    throw Error("make_contact_pair: need 1-forms on a 3-dimensional chart");
  if (!in_plus) in_plus = [](const Coords&) { return true; };
  if (!in_minus) in_minus = [](const Coords&) { return true; };
  ContactPair p{alpha_plus.chart, alpha_plus, alpha_minus, add(alpha_plus, alpha_minus),
                std::move(in_plus), std::move(in_minus), {}};
  p.alpha_zero.label = "alpha0";
  p.certificates = certify_contact_pair(p, samples);
  std::string failed;
  for (const auto& c : p.certificates)
    if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.check_name;
  if (!failed.empty()) throw Error("make_contact_pair: failed " + failed);
  return p;
}

std::vector<FoliationSample> characteristic_foliation(const ChartMap& surface,
                                                      const DifferentialForm& alpha,
                                                      const VectorField& co_orient,
                                                      const SampleSet& samples) {
  if (surface.source->dim() != 2 || surface.target->dim() != 3 || alpha.dim() != 3 ||
      alpha.degree != 1)
    throw Error("characteristic_foliation: need a surface in a 3-chart and a 1-form there");
  std::vector<FoliationSample> out;
  for (const auto& u : samples.points) {
    FoliationSample s{u, Coords(3, 0.0), true};
    const Coords x = surface.eval(u);
    const Matrix j = surface.jacobian(u);
    const Coords e1{j(0, 0), j(1, 0), j(2, 0)}, e2{j(0, 1), j(1, 1), j(2, 1)};
    const Coords a = alpha.coeffs(x);
    const Coords beta = cross(e1, e2);  // beta(X) = det[X, e1, e2]
    const Coords v = co_orient(x);
    const double av = dot(a, v), bv = dot(beta, v);
    const double scale = norm(a) * norm(beta);
    if (scale > 0 && std::abs(av) > 1e-12 * norm(a) * norm(v) &&
        std::abs(bv) > 1e-12 * norm(beta) * norm(v)) {
      Coords sa = a, sb = beta;
      if (av < 0)
        for (double& c : sa) c = -c;
      if (bv < 0)
        for (double& c : sb) c = -c;
      Coords d = cross(sa, sb);
      const double n = norm(d);
      if (n > 1e-9 * scale) {
        for (double& c : d) c /= n;
        s.direction = d;
        s.singular = false;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

ChartPtr cylinder_chart(const ChartPtr& base) {
  std::vector<std::string> names{"t"};
  names.insert(names.end(), base->coord_names.begin(), base->coord_names.end());
  std::vector<bool> periodic{false};
  periodic.insert(periodic.end(), base->periodic.begin(), base->periodic.end());
  Predicate dom;
  if (base->domain)
    dom = [base](const Coords& x) { return base->domain(Coords(x.begin() + 1, x.end())); };
  return make_chart("Rx" + base->name, names, periodic, dom, base->singular_radius);
}

DifferentialForm lift_form(const DifferentialForm& a, const ChartPtr& cylinder) {
  const int n = a.dim();
  if (cylinder->dim() != n + 1) throw Error("lift_form: chart is not a cylinder over the base");
  const auto& base = form_basis(n, a.degree);
  std::vector<int> target;
  for (auto idx : base) {
    for (int& i : idx) ++i;
    target.push_back(form_basis_index(n + 1, idx));
  }
  const int m = static_cast<int>(binomial(n + 1, a.degree));
  auto coeffs = [a, target, m](const Coords& x) {
    const Coords c = a.coeffs(Coords(x.begin() + 1, x.end()));
    Coords out(m, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) out[target[i]] = c[i];
    return out;
  };
  std::function<Matrix(const Coords&)> partials;
  if (a.partials)
    partials = [a, target, m, n](const Coords& x) {
      const Matrix p = a.partials(Coords(x.begin() + 1, x.end()));
      Matrix out = Matrix::Zero(m, n + 1);
      for (int i = 0; i < p.rows(); ++i) out.block(target[i], 1, 1, n) = p.row(i);
      return out;
    };
  return make_form(cylinder, a.degree, coeffs, partials, a.label);
}

VectorField lift_field(const VectorField& v, const ChartPtr& cylinder) {
  const int n = v.chart->dim();
  std::function<Matrix(const Coords&)> jac;
  if (v.jac)
    jac = [v, n](const Coords& x) {
      Matrix out = Matrix::Zero(n + 1, n + 1);
      out.block(1, 1, n, n) = v.jac(Coords(x.begin() + 1, x.end()));
      return out;
    };
  Predicate dom;
  if (v.domain) dom = [v](const Coords& x) { return v.domain(Coords(x.begin() + 1, x.end())); };
  return make_field(
      cylinder,
      [v](const Coords& x) {
        Coords c{0.0};
        const Coords b = v.eval(Coords(x.begin() + 1, x.end()));
        c.insert(c.end(), b.begin(), b.end());
        return c;
      },
      jac, dom, v.label);
}

Symplectization symplectization(const DifferentialForm& alpha, int sign, const ChartPtr& cylinder) {
  if (sign != 1 && sign != -1) throw ParameterError("symplectization: sign must be +1 or -1");
  const int dim = cylinder->dim();
  const double s = sign;
  ScalarField et{cylinder, [s](const Coords& x) { return std::exp(s * x[0]); },
                 [s, dim](const Coords& x) {
                   Coords g(dim, 0.0);
                   g[0] = s * std::exp(s * x[0]);
                   return g;
                 },
                 "e^{t}"};
  DifferentialForm omega = scale(exterior_derivative(multiply(et, lift_form(alpha, cylinder))), s);
  omega.label = std::string(sign > 0 ? "omega+" : "omega-") + "[" + alpha.label + "]";
  return Symplectization{cylinder, omega, coordinate_field(cylinder, 0), sign};
}

Symplectization symplectization(const DifferentialForm& alpha, int sign, const SampleSet* samples) {
  if (samples) {
    const Certificate c = check_contact(alpha, sign, *samples);
    if (!c.pass) throw Error("symplectization: " + alpha.label + " is not contact with this sign");
  }
  return symplectization(alpha, sign, cylinder_chart(alpha.chart));
}

DifferentialForm convex_enlargement(const DifferentialForm& alpha, const ScalarField& h) {
  auto checked = [h](const Coords& x) {
    const double v = h.eval(x);
    if (v < -1e-12) throw DomainError("convex_enlargement: negative height " + at_text(x));
    return v;
  };
  ScalarField eh{alpha.chart, [checked](const Coords& x) { return std::exp(checked(x)); }, {},
                 "e^" + h.label};
  if (h.grad)
    eh.grad = [checked, h](const Coords& x) {
      const double e = std::exp(checked(x));
      Coords g = h.grad(x);
      for (double& c : g) c *= e;
      return g;
    };
  DifferentialForm out = multiply(eh, alpha);
  out.label = "e^" + h.label + "*" + alpha.label;
  return out;
}

Certificate check_weak_convexity(const DifferentialForm& alpha, const DifferentialForm& omega,
                                 const ChartMap& boundary, const SampleSet& samples) {
  if (alpha.chart->dim() != 3 || omega.degree != 2)
    throw Error("check_weak_convexity: need a 1-form on the boundary and a 2-form ambient");
  const DifferentialForm top = wedge(alpha, pullback(boundary, omega));
  return top_degree_positive("weak-convexity:" + alpha.label, "alpha ^ omega|_boundary > 0", top,
                             1.0, samples, alpha.analytic());
}

}  // namespace hk
