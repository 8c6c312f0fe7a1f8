// Contact forms, contact pairs, Reeb fields and symplectizations.
#pragma once

#include <vector>

#include "hk/certificate.hpp"
#include "hk/geom.hpp"
#include "hk/sampling.hpp"

namespace hk {

/// Identity tolerance for checks built from `forms`: analytic if all carry partials.
double identity_tolerance(std::initializer_list<const DifferentialForm*> forms);

/// sign * (alpha ^ d alpha) > 0 against the chart orientation at each sample.
Certificate check_contact(const DifferentialForm& alpha, int sign, const SampleSet& samples);
/// Same, for a form on a 4-chart restricted to a parametrized hypersurface.
/// Samples live on the parametrization's source chart.
Certificate check_contact(const DifferentialForm& alpha, int sign, const ChartMap& surface,
                          const SampleSet& samples);

/// Reeb field of a contact form; solved pointwise on demand.
VectorField reeb_field(const DifferentialForm& alpha);

struct ContactPair {
  ChartPtr chart;
  DifferentialForm alpha_plus;
  DifferentialForm alpha_minus;
  DifferentialForm alpha_zero;
  Predicate in_plus;
  Predicate in_minus;
  std::vector<Certificate> certificates;

  bool in_overlap(const Coords& x) const { return in_plus(x) && in_minus(x); }
};

/// Certificates for the defining conditions (throws only on a covering failure).
std::vector<Certificate> certify_contact_pair(const ContactPair& p, const SampleSet& samples);

/// Builds the pair and certifies its defining conditions on `samples`.
/// Throws if a sample lies in neither domain or if any certificate fails.
ContactPair make_contact_pair(const DifferentialForm& alpha_plus,
                              const DifferentialForm& alpha_minus, Predicate in_plus,
                              Predicate in_minus, const SampleSet& samples);

struct FoliationSample {
  Coords at;         // surface parameters
  Coords direction;  // unit vector in the ambient chart frame
  bool singular = false;
};

/// Oriented line field T(surface) ∩ ker(alpha). The orientation is the one
/// obtained from the co-orientation convention and does not depend on the
/// sign of `co_orient` or on positive rescaling of alpha.
std::vector<FoliationSample> characteristic_foliation(const ChartMap& surface,
                                                      const DifferentialForm& alpha,
                                                      const VectorField& co_orient,
                                                      const SampleSet& samples);

struct Symplectization {
  ChartPtr chart;          // (t, x...)
  DifferentialForm omega;  // sign * d(e^{sign t} alpha)
  VectorField dt;
  int sign = 1;
};

/// Chart with a leading real coordinate t.
ChartPtr cylinder_chart(const ChartPtr& base);
/// Form on base pulled back to the cylinder (no dt components), partials kept.
DifferentialForm lift_form(const DifferentialForm& a, const ChartPtr& cylinder);
/// Field on base extended with zero dt component.
VectorField lift_field(const VectorField& v, const ChartPtr& cylinder);

/// If `samples` is given, alpha is first certified contact with this sign.
Symplectization symplectization(const DifferentialForm& alpha, int sign,
                                const SampleSet* samples = nullptr);
/// As above on an existing cylinder chart.
Symplectization symplectization(const DifferentialForm& alpha, int sign, const ChartPtr& cylinder);

/// e^h alpha; evaluation throws where h < 0.
DifferentialForm convex_enlargement(const DifferentialForm& alpha, const ScalarField& h);

/// alpha ^ (omega restricted to the hypersurface) > 0. alpha lives on the
/// parametrization's source chart, omega on its target.
Certificate check_weak_convexity(const DifferentialForm& alpha, const DifferentialForm& omega,
                                 const ChartMap& boundary, const SampleSet& samples);

}  // namespace hk
