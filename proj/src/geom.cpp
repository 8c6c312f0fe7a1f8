#include "hk/geom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hk {

namespace {

std::string coords_text(const Coords& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* op) {
  if (a != b && (a->name != b->name || a->dim() != b->dim()))
    throw Error(std::string(op) + ": chart mismatch (" + a->name + " vs " + b->name + ")");
}

void require_in_domain(const Chart& c, const Coords& x, const std::string& what) {
  if (!c.contains(x))
    throw DomainError(what + ": point " + coords_text(x) + " outside chart " + c.name);
}

// Sign of the permutation sorting the concatenation (strictly increasing I, J).
int merge_sign(const std::vector<int>& i, const std::vector<int>& j) {
  int inversions = 0;
  for (int a : i)
    for (int b : j)
      if (a > b) ++inversions;
  return inversions % 2 ? -1 : 1;
}

double minor_det(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 1.0;
  Matrix sub(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) sub(r, c) = m(rows[r], cols[c]);
  return sub.determinant();
}

struct WedgeTerm {
  int a, b, out, sign;
};

struct DerivTerm {
  int out, src, coord, sign;
};

struct ContractTerm {
  int src, out, slot, sign;
};

}  // namespace

// ---------------------------------------------------------------------------

bool Chart::contains(const Coords& x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return !domain || domain(x);
}

Coords Chart::reduce(Coords x) const {
  for (int i = 0; i < dim() && i < static_cast<int>(x.size()); ++i) {
    if (!periodic[i]) continue;
    x[i] = std::fmod(x[i], kTwoPi);
    if (x[i] < 0) x[i] += kTwoPi;
    if (x[i] >= kTwoPi) x[i] = 0.0;
  }
  return x;
}

int Chart::index_of(const std::string& coord) const {
  auto it = std::find(coord_names.begin(), coord_names.end(), coord);
  if (it == coord_names.end()) throw Error("chart " + name + " has no coordinate " + coord);
  return static_cast<int>(it - coord_names.begin());
}

ChartPtr make_chart(std::string name, std::vector<std::string> coord_names,
                    std::vector<bool> periodic, Predicate domain, double singular_radius) {
  if (coord_names.size() != periodic.size())
    throw ParameterError("chart " + name + ": coordinate names and periodic flags differ in length");
  if (coord_names.empty() || coord_names.size() > 4)
    throw ParameterError("chart " + name + ": dimension must be 1..4");
  if (singular_radius < 0) throw ParameterError("chart " + name + ": negative singular radius");
  auto c = std::make_shared<Chart>();
  c->name = std::move(name);
  c->coord_names = std::move(coord_names);
  c->periodic = std::move(periodic);
  c->domain = std::move(domain);
  c->singular_radius = singular_radius;
  return c;
}

Point make_point(ChartPtr chart, Coords coords) {
  if (static_cast<int>(coords.size()) != chart->dim())
    throw Error("point has " + std::to_string(coords.size()) + " coordinates, chart " +
                chart->name + " has dimension " + std::to_string(chart->dim()));
  coords = chart->reduce(std::move(coords));
  require_in_domain(*chart, coords, "make_point");
  return Point{std::move(chart), std::move(coords)};
}

Coords ScalarField::gradient(const Coords& x) const {
  if (grad) return grad(x);
  auto wrapped = [this](const Coords& y) { return Coords{eval(y)}; };
  Matrix j = fd_jacobian(wrapped, x, chart->dim());
  Coords g(chart->dim());
  for (int k = 0; k < chart->dim(); ++k) g[k] = j(0, k);
  return g;
}

bool VectorField::defined_at(const Coords& x) const {
  if (!chart->contains(x)) return false;
  return !domain || domain(x);
}

Coords VectorField::operator()(const Coords& x) const {
  if (!defined_at(x))
    throw DomainError("vector field " + label + " undefined at " + coords_text(x));
  return eval(x);
}

Matrix VectorField::jacobian(const Coords& x) const {
  if (jac) return jac(x);
  return fd_jacobian(eval, x, chart->dim());
}

std::size_t DifferentialForm::size() const { return binomial(dim(), degree); }

Matrix DifferentialForm::coefficient_jacobian(const Coords& x) const {
  if (partials) return partials(x);
  return fd_jacobian(coeffs, x, dim());
}

double DifferentialForm::apply(const Coords& x, const std::vector<Coords>& vectors) const {
  if (static_cast<int>(vectors.size()) != degree)
    throw Error("form " + label + ": expected " + std::to_string(degree) + " vectors");
  const Coords c = coeffs(x);
  if (degree == 0) return c[0];
  Matrix m(dim(), degree);
  for (int j = 0; j < degree; ++j)
    for (int i = 0; i < dim(); ++i) m(i, j) = vectors[j][i];
  std::vector<int> cols(degree);
  std::iota(cols.begin(), cols.end(), 0);
  const auto& basis = form_basis(dim(), degree);
  double total = 0.0;
  for (std::size_t b = 0; b < basis.size(); ++b) total += c[b] * minor_det(m, basis[b], cols);
  return total;
}

Matrix ChartMap::jacobian(const Coords& x) const {
  if (jac) return jac(x);
  Matrix j = fd_jacobian(eval, x, source->dim());
  return j;
}

// ---------------------------------------------------------------------------

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const std::vector<std::vector<int>>& form_basis(int dim, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == degree) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < dim; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return cache.emplace(key, std::move(out)).first->second;
}

int form_basis_index(int dim, const std::vector<int>& indices) {
  const auto& basis = form_basis(dim, static_cast<int>(indices.size()));
  auto it = std::find(basis.begin(), basis.end(), indices);
  if (it == basis.end()) throw Error("index tuple is not strictly increasing within dimension");
  return static_cast<int>(it - basis.begin());
}

Coords fd_partial(const std::function<Coords(const Coords&)>& f, const Coords& x, int k,
                  double step) {
  auto central = [&](double h) {
    Coords xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    Coords fp = f(xp), fm = f(xm);
    for (std::size_t i = 0; i < fp.size(); ++i) fp[i] = (fp[i] - fm[i]) / (2 * h);
    return fp;
  };
  Coords d1 = central(step);
  Coords d2 = central(step / 2);
  for (std::size_t i = 0; i < d1.size(); ++i) d1[i] = (4 * d2[i] - d1[i]) / 3;
  return d1;
}

Matrix fd_jacobian(const std::function<Coords(const Coords&)>& f, const Coords& x, int dim,
                   double step) {
  Matrix j;
  for (int k = 0; k < dim; ++k) {
    Coords col = fd_partial(f, x, k, step);
    if (k == 0) j = Matrix::Zero(static_cast<int>(col.size()), dim);
    for (std::size_t i = 0; i < col.size(); ++i) j(static_cast<int>(i), k) = col[i];
  }
  return j;
}

// ---------------------------------------------------------------------------

DifferentialForm make_form(ChartPtr chart, int degree, std::function<Coords(const Coords&)> coeffs,
                           std::function<Matrix(const Coords&)> partials, std::string label) {
  if (degree < 0 || degree > chart->dim())
    throw Error("form degree " + std::to_string(degree) + " invalid on chart " + chart->name);
  return DifferentialForm{std::move(chart), degree, std::move(coeffs), std::move(partials),
                          std::move(label)};
}

DifferentialForm zero_form(ChartPtr chart, int degree) {
  const int n = static_cast<int>(binomial(chart->dim(), degree));
  const int dim = chart->dim();
  return make_form(
      chart, degree, [n](const Coords&) { return Coords(n, 0.0); },
      [n, dim](const Coords&) { return Matrix(Matrix::Zero(n, dim)); }, "0");
}

DifferentialForm coordinate_differential(ChartPtr chart, int k) {
  const int dim = chart->dim();
  if (k < 0 || k >= dim) throw Error("coordinate index out of range");
  return make_form(
      chart, 1,
      [dim, k](const Coords&) {
        Coords c(dim, 0.0);
        c[k] = 1.0;
        return c;
      },
      [dim](const Coords&) { return Matrix(Matrix::Zero(dim, dim)); },
      "d" + chart->coord_names[k]);
}

DifferentialForm function_form(const ScalarField& f) {
  const int dim = f.chart->dim();
  std::function<Matrix(const Coords&)> partials;
  if (f.grad) {
    partials = [f, dim](const Coords& x) {
      Coords g = f.grad(x);
      Matrix m(1, dim);
      for (int k = 0; k < dim; ++k) m(0, k) = g[k];
      return m;
    };
  }
  return make_form(
      f.chart, 0, [f](const Coords& x) { return Coords{f.eval(x)}; }, partials, f.label);
}

VectorField make_field(ChartPtr chart, std::function<Coords(const Coords&)> eval,
                       std::function<Matrix(const Coords&)> jac, Predicate domain,
                       std::string label) {
  return VectorField{std::move(chart), std::move(eval), std::move(jac), std::move(domain),
                     std::move(label)};
}

VectorField coordinate_field(ChartPtr chart, int k) {
  const int dim = chart->dim();
  return make_field(
      chart,
      [dim, k](const Coords&) {
        Coords v(dim, 0.0);
        v[k] = 1.0;
        return v;
      },
      [dim](const Coords&) { return Matrix(Matrix::Zero(dim, dim)); }, {},
      "d/d" + chart->coord_names[k]);
}

ChartMap identity_map(ChartPtr chart) {
  const int dim = chart->dim();
  return ChartMap{chart, chart, [](const Coords& x) { return x; },
                  [dim](const Coords&) { return Matrix(Matrix::Identity(dim, dim)); }, "id"};
}

ChartMap compose(const ChartMap& outer, const ChartMap& inner) {
  if (inner.target->dim() != outer.source->dim())
    throw Error("compose: dimension mismatch between " + inner.label + " and " + outer.label);
  ChartMap m;
  m.source = inner.source;
  m.target = outer.target;
  m.eval = [outer, inner](const Coords& x) { return outer.eval(inner.eval(x)); };
  m.jac = [outer, inner](const Coords& x) {
    return Matrix(outer.jacobian(inner.eval(x)) * inner.jacobian(x));
  };
  m.label = outer.label + " o " + inner.label;
  return m;
}

// ---------------------------------------------------------------------------

namespace {

DifferentialForm linear_combination(const DifferentialForm& a, double ca, const DifferentialForm& b,
                                    double cb, const char* op) {
  require_same_chart(a.chart, b.chart, op);
  if (a.degree != b.degree) throw Error(std::string(op) + ": degree mismatch");
  std::function<Matrix(const Coords&)> partials;
  if (a.partials && b.partials)
    partials = [a, b, ca, cb](const Coords& x) {
      return Matrix(ca * a.partials(x) + cb * b.partials(x));
    };
  return make_form(
      a.chart, a.degree,
      [a, b, ca, cb](const Coords& x) {
        Coords u = a.coeffs(x), v = b.coeffs(x);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = ca * u[i] + cb * v[i];
        return u;
      },
      partials, "(" + a.label + (cb < 0 ? " - " : " + ") + b.label + ")");
}

}  // namespace

DifferentialForm add(const DifferentialForm& a, const DifferentialForm& b) {
  return linear_combination(a, 1.0, b, 1.0, "add");
}

DifferentialForm subtract(const DifferentialForm& a, const DifferentialForm& b) {
  return linear_combination(a, 1.0, b, -1.0, "subtract");
}

DifferentialForm scale(const DifferentialForm& a, double c) {
  std::function<Matrix(const Coords&)> partials;
  if (a.partials) partials = [a, c](const Coords& x) { return Matrix(c * a.partials(x)); };
  return make_form(
      a.chart, a.degree,
      [a, c](const Coords& x) {
        Coords u = a.coeffs(x);
        for (double& v : u) v *= c;
        return u;
      },
      partials, std::to_string(c) + "*" + a.label);
}

DifferentialForm multiply(const ScalarField& f, const DifferentialForm& a) {
  require_same_chart(f.chart, a.chart, "multiply");
  std::function<Matrix(const Coords&)> partials;
  if (f.grad && a.partials) {
    partials = [f, a](const Coords& x) {
      const double fv = f.eval(x);
      const Coords g = f.grad(x);
      const Coords c = a.coeffs(x);
      Matrix p = fv * a.partials(x);
      for (int i = 0; i < p.rows(); ++i)
        for (int k = 0; k < p.cols(); ++k) p(i, k) += g[k] * c[i];
      return p;
    };
  }
  return make_form(
      a.chart, a.degree,
      [f, a](const Coords& x) {
        Coords u = a.coeffs(x);
        const double fv = f.eval(x);
        for (double& v : u) v *= fv;
        return u;
      },
      partials, f.label + "*" + a.label);
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a.chart, b.chart, "wedge");
  const int dim = a.dim();
  const int deg = a.degree + b.degree;
  if (deg > dim)
    throw Error("wedge: degree " + std::to_string(deg) + " exceeds dimension " +
                std::to_string(dim));
  std::vector<WedgeTerm> terms;
  const auto& ba = form_basis(dim, a.degree);
  const auto& bb = form_basis(dim, b.degree);
  for (std::size_t i = 0; i < ba.size(); ++i)
    for (std::size_t j = 0; j < bb.size(); ++j) {
      std::vector<int> merged = ba[i];
      merged.insert(merged.end(), bb[j].begin(), bb[j].end());
      std::vector<int> sorted = merged;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      terms.push_back({static_cast<int>(i), static_cast<int>(j), form_basis_index(dim, sorted),
                       merge_sign(ba[i], bb[j])});
    }
  const int n = static_cast<int>(binomial(dim, deg));
  auto coeffs = [a, b, terms, n](const Coords& x) {
    const Coords u = a.coeffs(x), v = b.coeffs(x);
    Coords c(n, 0.0);
    for (const auto& t : terms) c[t.out] += t.sign * u[t.a] * v[t.b];
    return c;
  };
  std::function<Matrix(const Coords&)> partials;
  if (a.partials && b.partials) {
    partials = [a, b, terms, n, dim](const Coords& x) {
      const Coords u = a.coeffs(x), v = b.coeffs(x);
      const Matrix pu = a.partials(x), pv = b.partials(x);
      Matrix p = Matrix::Zero(n, dim);
      for (const auto& t : terms)
        for (int k = 0; k < dim; ++k)
          p(t.out, k) += t.sign * (pu(t.a, k) * v[t.b] + u[t.a] * pv(t.b, k));
      return p;
    };
  }
  return make_form(a.chart, deg, coeffs, partials, a.label + "^" + b.label);
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  const int dim = a.dim();
  if (a.degree >= dim)
    throw Error("exterior_derivative: degree " + std::to_string(a.degree) +
                " is top degree on " + a.chart->name);
  std::vector<DerivTerm> terms;
  const auto& out_basis = form_basis(dim, a.degree + 1);
  for (std::size_t o = 0; o < out_basis.size(); ++o) {
    const auto& k = out_basis[o];
    for (std::size_t j = 0; j < k.size(); ++j) {
      std::vector<int> rest = k;
      rest.erase(rest.begin() + static_cast<long>(j));
      terms.push_back({static_cast<int>(o), form_basis_index(dim, rest), k[j], j % 2 ? -1 : 1});
    }
  }
  const int n = static_cast<int>(out_basis.size());
  const ChartPtr chart = a.chart;
  auto coeffs = [a, terms, n, chart](const Coords& x) {
    require_in_domain(*chart, x, "exterior_derivative of " + a.label);
    const Matrix p = a.coefficient_jacobian(x);
    Coords c(n, 0.0);
    for (const auto& t : terms) c[t.out] += t.sign * p(t.src, t.coord);
    return c;
  };
  return make_form(chart, a.degree + 1, coeffs, {}, "d(" + a.label + ")");
}

Coords contract(int dim, int degree, const Coords& vector, const Coords& coefficients) {
  const auto& basis = form_basis(dim, degree);
  Coords out(binomial(dim, degree - 1), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& idx = basis[i];
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::vector<int> rest = idx;
      rest.erase(rest.begin() + static_cast<long>(j));
      out[form_basis_index(dim, rest)] += (j % 2 ? -1.0 : 1.0) * vector[idx[j]] * coefficients[i];
    }
  }
  return out;
}

DifferentialForm interior_product(const VectorField& v, const DifferentialForm& a) {
  require_same_chart(v.chart, a.chart, "interior_product");
  if (a.degree < 1) throw Error("interior_product: degree-0 form " + a.label);
  const int dim = a.dim();
  std::vector<ContractTerm> terms;
  const auto& basis = form_basis(dim, a.degree);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& idx = basis[i];
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::vector<int> rest = idx;
      rest.erase(rest.begin() + static_cast<long>(j));
      terms.push_back({static_cast<int>(i), form_basis_index(dim, rest), idx[j], j % 2 ? -1 : 1});
    }
  }
  const int n = static_cast<int>(binomial(dim, a.degree - 1));
  auto coeffs = [v, a, terms, n](const Coords& x) {
    const Coords vv = v(x);
    const Coords c = a.coeffs(x);
    Coords out(n, 0.0);
    for (const auto& t : terms) out[t.out] += t.sign * vv[t.slot] * c[t.src];
    return out;
  };
  std::function<Matrix(const Coords&)> partials;
  if (v.jac && a.partials) {
    partials = [v, a, terms, n, dim](const Coords& x) {
      const Coords vv = v(x);
      const Matrix jv = v.jac(x);
      const Coords c = a.coeffs(x);
      const Matrix pc = a.partials(x);
      Matrix p = Matrix::Zero(n, dim);
      for (const auto& t : terms)
        for (int k = 0; k < dim; ++k)
          p(t.out, k) += t.sign * (jv(t.slot, k) * c[t.src] + vv[t.slot] * pc(t.src, k));
      return p;
    };
  }
  return make_form(a.chart, a.degree - 1, coeffs, partials, "i_" + v.label + "(" + a.label + ")");
}

DifferentialForm lie_derivative(const VectorField& v, const DifferentialForm& a) {
  require_same_chart(v.chart, a.chart, "lie_derivative");
  DifferentialForm result = zero_form(a.chart, a.degree);
  bool have = false;
  if (a.degree >= 1) {
    result = exterior_derivative(interior_product(v, a));
    have = true;
  }
  if (a.degree < a.dim()) {
    DifferentialForm second = interior_product(v, exterior_derivative(a));
    result = have ? add(result, second) : second;
  }
  result.partials = {};
  result.label = "L_" + v.label + "(" + a.label + ")";
  return result;
}

DifferentialForm pullback(const ChartMap& m, const DifferentialForm& a) {
  if (m.target->dim() != a.dim()) throw Error("pullback: form does not live on map target");
  const int deg = a.degree;
  const int src_dim = m.source->dim();
  if (deg > src_dim) return zero_form(m.source, std::min(deg, src_dim));
  const auto& tb = form_basis(a.dim(), deg);
  const auto& sb = form_basis(src_dim, deg);
  auto coeffs = [m, a, tb, sb](const Coords& x) {
    const Coords y = m.eval(x);
    require_in_domain(*a.chart, y, "pullback image of " + a.label);
    const Coords c = a.coeffs(y);
    Coords out(sb.size(), 0.0);
    if (a.degree == 0) {
      out[0] = c[0];
      return out;
    }
    const Matrix j = m.jacobian(x);
    for (std::size_t s = 0; s < sb.size(); ++s)
      for (std::size_t t = 0; t < tb.size(); ++t) out[s] += c[t] * minor_det(j, tb[t], sb[s]);
    return out;
  };
  return make_form(m.source, deg, coeffs, {}, m.label + "^*(" + a.label + ")");
}

Point flow(const VectorField& v, const Point& p, double t, double step) {
  if (step <= 0) throw ParameterError("flow: step must be positive");
  Coords x = p.coords;
  const int dim = static_cast<int>(x.size());
  const double dir = t < 0 ? -1.0 : 1.0;
  const double total = std::abs(t);
  double elapsed = 0.0;
  auto eval = [&](const Coords& y, double at) {
    if (!v.defined_at(y)) {
      std::ostringstream os;
      os << "flow of " << v.label << " leaves its domain near t = " << dir * at;
      throw DomainError(os.str());
    }
    Coords k = v.eval(y);
    for (double& c : k) c *= dir;
    return k;
  };
  auto axpy = [dim](const Coords& a, const Coords& b, double s) {
    Coords out(dim);
    for (int i = 0; i < dim; ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  while (elapsed < total) {
    const double h = std::min(step, total - elapsed);
    const Coords k1 = eval(x, elapsed);
    const Coords k2 = eval(axpy(x, k1, h / 2), elapsed + h / 2);
    const Coords k3 = eval(axpy(x, k2, h / 2), elapsed + h / 2);
    const Coords k4 = eval(axpy(x, k3, h), elapsed + h);
    for (int i = 0; i < dim; ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    elapsed += h;
    if (total - elapsed < 1e-15) elapsed = total;
  }
  if (!v.defined_at(x)) {
    std::ostringstream os;
    os << "flow of " << v.label << " leaves its domain at t = " << t;
    throw DomainError(os.str());
  }
  return Point{p.chart, p.chart->reduce(x)};
}

double coefficient_distance(const DifferentialForm& a, const DifferentialForm& b, const Coords& x) {
  const Coords u = a.coeffs(x), v = b.coeffs(x);
  if (u.size() != v.size()) throw Error("coefficient_distance: degree mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(u[i] - v[i]));
  return worst;
}

double angle_difference(double a, double b) {
  double d = std::fmod(a - b, kTwoPi);
  if (d > kTwoPi / 2) d -= kTwoPi;
  if (d <= -kTwoPi / 2) d += kTwoPi;
  return d;
}

}  // namespace hk
