// Coordinate charts and pointwise exterior calculus on them.
//
// Everything here is evaluated sample-by-sample: a form is a function from
// chart coordinates to its coefficients over the strictly-increasing
// multi-index basis, optionally paired with the analytic Jacobian of those
// coefficients. When the Jacobian is present, derivatives are exact up to
// rounding; otherwise they fall back to Richardson-extrapolated central
// differences.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

using Coords = std::vector<double>;
using Matrix = Eigen::MatrixXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Tolerance for identities evaluated with analytic derivatives.
inline constexpr double kTolAnalytic = 1e-6;
/// Tolerance for identities evaluated with finite differences.
inline constexpr double kTolFiniteDiff = 1e-4;
/// Strict inequalities must hold with at least this margin.
inline constexpr double kStrictMargin = 1e-9;
/// Base step for central differences.
inline constexpr double kFdStep = 1e-5;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation at a point outside a chart's or field's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameters (radii ordering, epsilons, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

using Predicate = std::function<bool(const Coords&)>;

struct Chart {
  std::string name;
  std::vector<std::string> coord_names;
  std::vector<bool> periodic;
  Predicate domain;  // empty = whole coordinate space
  double singular_radius = 1e-3;

  int dim() const { return static_cast<int>(coord_names.size()); }
  bool contains(const Coords& x) const;
  /// Periodic entries reduced to [0, 2pi).
  Coords reduce(Coords x) const;
  int index_of(const std::string& coord) const;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, std::vector<std::string> coord_names,
                    std::vector<bool> periodic, Predicate domain = {},
                    double singular_radius = 1e-3);

struct Point {
  ChartPtr chart;
  Coords coords;
};

/// Validates length and domain, reduces periodic entries.
Point make_point(ChartPtr chart, Coords coords);

struct ScalarField {
  ChartPtr chart;
  std::function<double(const Coords&)> eval;
  std::function<Coords(const Coords&)> grad;  // optional
  std::string label;

  double operator()(const Coords& x) const { return eval(x); }
  /// Analytic gradient if present, otherwise central differences.
  Coords gradient(const Coords& x) const;
};

struct VectorField {
  ChartPtr chart;
  std::function<Coords(const Coords&)> eval;
  std::function<Matrix(const Coords&)> jac;  // optional, dim x dim, d(V^i)/dx^j
  Predicate domain;                          // empty = chart domain
  std::string label;

  bool defined_at(const Coords& x) const;
  Coords operator()(const Coords& x) const;
  Matrix jacobian(const Coords& x) const;
};

struct DifferentialForm {
  ChartPtr chart;
  int degree = 0;
  std::function<Coords(const Coords&)> coeffs;
  /// Optional: rows index basis elements, columns index coordinates.
  std::function<Matrix(const Coords&)> partials;
  std::string label;

  int dim() const { return chart->dim(); }
  std::size_t size() const;
  bool analytic() const { return static_cast<bool>(partials); }
  Coords operator()(const Coords& x) const { return coeffs(x); }
  /// Coefficient Jacobian, analytic if available.
  Matrix coefficient_jacobian(const Coords& x) const;
  /// a(v_1, ..., v_k) at x.
  double apply(const Coords& x, const std::vector<Coords>& vectors) const;
};

struct ChartMap {
  ChartPtr source;
  ChartPtr target;
  std::function<Coords(const Coords&)> eval;
  std::function<Matrix(const Coords&)> jac;  // optional, dim_target x dim_source
  std::string label;

  Coords operator()(const Coords& x) const { return eval(x); }
  Matrix jacobian(const Coords& x) const;
};

// ---------------------------------------------------------------------------
// Multi-index basis helpers.

/// Strictly increasing index tuples of length `degree` in lexicographic order.
const std::vector<std::vector<int>>& form_basis(int dim, int degree);
/// Position of a strictly increasing index tuple in form_basis(dim, size).
int form_basis_index(int dim, const std::vector<int>& indices);
std::size_t binomial(int n, int k);

// ---------------------------------------------------------------------------
// Finite differences.

/// Richardson-extrapolated central difference of a vector-valued function
/// with respect to coordinate k.
Coords fd_partial(const std::function<Coords(const Coords&)>& f, const Coords& x, int k,
                  double step = kFdStep);
/// Full Jacobian (rows = outputs, cols = coordinates) by central differences.
Matrix fd_jacobian(const std::function<Coords(const Coords&)>& f, const Coords& x,
                   int dim, double step = kFdStep);

// ---------------------------------------------------------------------------
// Constructors.

DifferentialForm make_form(ChartPtr chart, int degree, std::function<Coords(const Coords&)> coeffs,
                           std::function<Matrix(const Coords&)> partials = {},
                           std::string label = {});
DifferentialForm zero_form(ChartPtr chart, int degree);
/// Coordinate differential dx^k.
DifferentialForm coordinate_differential(ChartPtr chart, int k);
/// A 0-form from a scalar field.
DifferentialForm function_form(const ScalarField& f);
VectorField make_field(ChartPtr chart, std::function<Coords(const Coords&)> eval,
                       std::function<Matrix(const Coords&)> jac = {}, Predicate domain = {},
                       std::string label = {});
/// Constant coordinate field d/dx^k.
VectorField coordinate_field(ChartPtr chart, int k);
ChartMap identity_map(ChartPtr chart);
ChartMap compose(const ChartMap& outer, const ChartMap& inner);

// ---------------------------------------------------------------------------
// Algebra.

DifferentialForm add(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm subtract(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm scale(const DifferentialForm& a, double c);
/// f * a for a scalar field f.
DifferentialForm multiply(const ScalarField& f, const DifferentialForm& a);

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);
DifferentialForm interior_product(const VectorField& v, const DifferentialForm& a);
DifferentialForm lie_derivative(const VectorField& v, const DifferentialForm& a);
DifferentialForm pullback(const ChartMap& m, const DifferentialForm& a);

/// Pointwise contraction of coefficient arrays (no field machinery).
Coords contract(int dim, int degree, const Coords& vector, const Coords& coefficients);

/// Fixed-step RK4 integration; the last step is shortened to land exactly on t.
Point flow(const VectorField& v, const Point& p, double t, double step = 1e-3);

/// Largest |a_I - b_I| over the basis at x.
double coefficient_distance(const DifferentialForm& a, const DifferentialForm& b, const Coords& x);
/// Signed difference of angles reduced to (-pi, pi].
double angle_difference(double a, double b);

}  // namespace hk
