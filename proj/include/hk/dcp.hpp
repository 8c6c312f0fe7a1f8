// Dilation-contraction pairs built from contact pairs.
#pragma once

#include <iosfwd>
#include <optional>

#include "hk/contact.hpp"

namespace hk {

struct PairGeometry {
  ContactPair pair;
  DifferentialForm gamma;  // d alpha^+ = -d alpha^-
  ScalarField g_plus, g_minus;
  DifferentialForm beta_plus, beta_minus;
  VectorField z_plus, z_minus;
  std::vector<Certificate> certificates;
};

/// Z^± with i_Z gamma = beta^± on ker alpha^±, solved per point. The
/// certificates on the overlap samples cover the defining equation and the
/// three kernel memberships.
PairGeometry solve_pair_geometry(const ContactPair& pair, const SampleSet& samples);

/// Z on ker alpha with i_Z gamma = beta, at one point. Throws if gamma is
/// degenerate on ker alpha there.
Coords solve_kernel_field(const Coords& alpha, const Coords& gamma, const Coords& beta);

/// Columns: chart coordinates, g+, g-, Z+ components, Z- components.
void write_pair_geometry_csv(const PairGeometry& g, const SampleSet& samples, std::ostream& out);

/// On the symplectization of sign `which`, the field completing d/dt to a
/// dilation-contraction pair: V^- for which = +1, V^+ for which = -1.
VectorField counterpart_field(const PairGeometry& g, int which, const ChartPtr& cylinder);

/// Independent per-point solve at t = 0 of i_V omega = alpha^{-which} on TM
/// together with omega(d/dt, V) = 0.
Coords counterpart_along_slice(const Symplectization& s, const DifferentialForm& target,
                               const Coords& x);

struct DCPair {
  std::optional<VectorField> v_plus;
  std::optional<VectorField> v_minus;
  DifferentialForm omega;
};

/// Checks L_{V±} omega = ±omega, i_{V±} omega|_M = alpha^±, omega(V+, V-) = 0
/// and positive transversality of each field along the hypersurface.
/// Per-equation violations are stored in the certificate params.
Certificate verify_dcp(const DCPair& dcp, const ChartMap& surface,
                       const std::optional<DifferentialForm>& alpha_plus,
                       const std::optional<DifferentialForm>& alpha_minus,
                       const SampleSet& samples);

struct GraphTransversality {
  Certificate certificate;
  DifferentialForm alpha_plus, alpha_minus, alpha_zero;  // induced on the graph
};

/// e^{±h} < g^± - dh(Z^±) on the overlap samples.
GraphTransversality graph_transversality(const PairGeometry& g, const ScalarField& h, int sign,
                                         const SampleSet& samples);

}  // namespace hk
