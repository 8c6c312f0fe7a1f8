// Symplectic 2-handle models with their certificates.
#pragma once

#include <iosfwd>
#include <optional>

#include "hk/contact.hpp"
#include "hk/profile.hpp"
#include "hk/sampling.hpp"
#include "hk/structural.hpp"

namespace hk {

enum class HandleFamily { weak_convex, contact_pair, weinstein_convex, weinstein_concave };
std::string to_string(HandleFamily f);

/// Raised when a construction produces a failing certificate.
class HandleRejected : public Error {
 public:
  HandleRejected(const std::string& what, Certificate cert) : Error(what), certificate(std::move(cert)) {}
  Certificate certificate;
};

struct HandleDescriptor {
  HandleFamily family = HandleFamily::weak_convex;
  double eps1 = 0, eps2 = 0, R1 = 0, R2 = 0, R3 = 0;
  double delta = 0;  // twist width, weak-convex family only
  std::optional<ProfileFunction> profile;
  std::optional<StructuralData> data;
  double R = 0, T = 0;  // flow threshold and flow time

  ChartPtr chart;  // ambient R^4 chart
  std::optional<DifferentialForm> omega;
  std::optional<ScalarField> f;
  std::optional<VectorField> v_plus, v_minus;

  ChartPtr boundary_chart;              // (r, mu, lambda) on the attaching level
  std::optional<ChartMap> attaching;    // boundary_chart -> chart
  std::optional<ChartMap> free_graph;   // image of the graph of h under the flow
  std::optional<ChartMap> free_level;   // part of the free boundary on f = eps2
  std::optional<DifferentialForm> alpha1_plus, alpha1_minus;

  std::string knot_model;
  std::string framing;
  std::vector<Certificate> certificates;
  SampleSpec spec;

  bool all_pass() const;
  /// Parameters, derived constants, attaching data and certificate digests.
  nlohmann::json to_json() const;
};

/// Flow time of the graph point over radius r (capped where the flow reaches
/// the belt circle first).
double graph_time(const HandleDescriptor& d, double r);

/// CSV with columns line,t,r1,th1,r2,th2 along flow lines from the attaching boundary.
void write_flow_lines_csv(const HandleDescriptor& d, std::ostream& out, int lines = 8, int steps = 40);

HandleDescriptor build_weak_convex_handle(double eps1, double eps2, double R1, double R2, double R3,
                                          std::optional<ProfileFunction> h = std::nullopt,
                                          double delta = 0.05, const SampleSpec& spec = {});

/// Twist function constraints: t(0) = 0, t' > 0 on (0, 1 + delta], tail
/// equality, 1 - t > 0 up to `working_s`, and contact condition of
/// d lambda + t(r^2) d mu.
Certificate check_twist(const ProfileFunction& t, double eps2, double delta, double working_s,
                        const SampleSpec& spec = {});

HandleDescriptor build_contact_pair_handle(const StructuralData& data, double eps2, double R1,
                                           double R2, double R3,
                                           std::optional<ProfileFunction> h = std::nullopt,
                                           const SampleSpec& spec = {});

/// Pair induced by V+ and V- on the attaching boundary f = eps1 of the
/// contact-pair handle, in (r, mu, lambda); no certificates attached.
ContactPair attaching_pair(const StructuralData& data);

/// e^{h} < g^+ - h'(r) dr(Z^+) on [R1, R3] with r^2 < C/(A(C+D)) on [R1, R2];
/// transversality of both fields to the graph part is recorded as well.
Certificate check_free_boundary_transversality(const HandleDescriptor& d);

enum class WeinsteinKind { convex, concave };
HandleDescriptor build_weinstein_handle(WeinsteinKind kind, double eps1 = -0.5,
                                        const SampleSpec& spec = {});

/// Cartesian chart (x1, y1, x2, y2).
ChartPtr cartesian4();

}  // namespace hk
