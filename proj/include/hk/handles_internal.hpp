// Helpers shared by the handle builders.
#pragma once

#include "hk/handles.hpp"

namespace hk::detail {

std::string at(const char* what, double v);
std::string at(const Coords& x);
/// Max-norm gap between two covectors after normalization.
double direction_gap(Coords a, Coords b);

/// (r, mu, lambda) -> (sqrt(r^2 - eps1), -lambda, r, mu).
ChartMap level_eps1_map(const ChartPtr& torus, const ChartPtr& polar, double eps1);
/// (r, mu, lambda) -> (r, mu, sqrt(r^2 + eps2), lambda).
ChartMap level_eps2_map(const ChartPtr& torus, const ChartPtr& polar, double eps2);
ChartMap graph_map(const ChartPtr& torus, const ChartPtr& polar, double a, double b,
                   std::function<double(double)> tau, std::function<double(double)> dtau);

/// (omega ^ omega)(V, dm e1, dm e2, dm e3) at m(u).
double transversality(const DifferentialForm& top, const VectorField& v, const ChartMap& m,
                      const Coords& u);

SampleSet polar_band(const ChartPtr& polar, double f_lo, double f_hi, double r_max,
                     const SampleSpec& spec);
SampleSet torus_band(const ChartPtr& torus, double lo, double hi, const SampleSpec& spec);

Certificate flange_certificate(const HandleDescriptor& d, const SampleSpec& spec);
Certificate lie_certificate(const std::string& name, const VectorField& v,
                            const DifferentialForm& omega, double sign, const SampleSet& samples);
Certificate level_transversality(const std::string& name, const VectorField& v, const ScalarField& f,
                                 const SampleSet& samples);
void require_profile_shape(const ProfileFunction& h, double R1, double R2, double R3, double T);

}  // namespace hk::detail
