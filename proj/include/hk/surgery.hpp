// Framing calculus, preparation for surgery, push-offs, diagrams and the
// convex-to-concave pipeline.
#pragma once

#include <optional>

#include "hk/handles.hpp"

namespace hk {

/// Framing F_mu + offset relative to a named coordinate system.
struct Framing {
  std::string reference = "mu";
  long offset = 0;
  std::string str() const;
};

/// F_{mu - k lambda} = F_mu + k.
Framing shift_coordinates(const Framing& f, long k);

/// Data in the coordinates (r, mu - k lambda, lambda): (A - Bk, B, C, D + Ck).
StructuralData shift_framing(const StructuralData& data, long k);

/// The coordinate system reaches {r <= e^n}.
bool is_fat(double r_max, long n);

/// Slope s_p in Q or infinity (nullopt).
using Slope = std::optional<Rational>;
bool positivity_wrt_fibration(const Slope& s_p, long s_F);
std::string to_string(const Slope& s);

/// Continued-fraction reconstruction within tol, denominator at most max_den.
std::optional<Rational> rational_approximation(double x, double tol = 1e-9, long max_den = 1000000);

struct DerivedData {
  StructuralData data;
  bool orientation_flipped = false;  // coordinates replaced by (r, -mu, -lambda)
  Certificate certificate;
};

/// Reads A, B from the Reeb field of alpha_plus and C, D from alpha_zero on a
/// (r, mu, lambda) chart. Throws Error "not well-behaved" on non-constant
/// coefficients.
DerivedData derive_structural_data(const DifferentialForm& alpha_plus, const DifferentialForm& alpha_zero,
                                   const SampleSet& samples);

struct Preparation {
  ProfileFunction h;        // in the normal radius r
  Rational A0;
  double delta = 0, eps = 0;
  StructuralData prepared;  // (A0, A0, C, D)
  Certificate certificate;
};

/// Radial enlargement near a well-behaved knot turning its pair into one
/// prepared for surgery on {r <= delta}.
Preparation prepare_for_surgery(const StructuralData& data, double eps, std::uint64_t seed = 0);

struct PushOff {
  double eps = 0, c1 = 3, c2 = 0;
  long framing = -1;
  double reach = 0;  // normal-coordinate reach of {r < 2}
  ChartPtr disk;     // (x, y, lambda), x^2 + y^2 < 4
  ChartPtr legendrian;
  ChartMap map;      // Phi(p, lambda) = (phi(p), lambda + h(p))
  std::function<double(double, double)> h;
  DifferentialForm alpha_disk;        // d lambda + (1/2) r^2 dmu
  DifferentialForm alpha_legendrian;  // d lambda - (1/x) dy
  Certificate certificate;
};

/// Transverse push-off of the Legendrian core of D_eps x S^1 with
/// alpha = dy - x d lambda, fat with respect to the framing F <= -1.
PushOff transverse_push_off(double eps, long framing = -1, double c1 = 3.0, const SampleSpec& spec = {});

enum class ComponentRole { surgered, ambient, leaf };
std::string to_string(ComponentRole r);

struct DiagramComponent {
  std::string tag;
  long framing = 0;
  ComponentRole role = ComponentRole::surgered;
};

struct SurgeryDiagram {
  std::string ambient = "S3";
  std::vector<DiagramComponent> components;
  bool admissible = true;
  std::string reason;

  std::string text() const;
  nlohmann::json to_json() const;
};

SurgeryDiagram emit_unknot(long F);
SurgeryDiagram emit_hopf(long F1, long F2);
SurgeryDiagram emit_surface(int genus, int boundary_components, const std::vector<long>& framings,
                            const std::vector<int>& leaf_counts);

/// One link component with normal coordinates (r, mu, lambda) on a solid torus.
struct FibrationComponent {
  std::string tag;
  ChartPtr chart;
  DifferentialForm alpha;  // contact form in local coordinates
  VectorField v;           // transverse contact field, local
  DifferentialForm dp;     // d of the fibration, local
  ChartMap page;           // (r, lambda) -> a fiber near the knot
  std::function<Coords(const Coords&)> from_global;  // global chart -> local chart
};

struct FibrationModel {
  std::string name;
  ChartPtr chart;  // global chart of the convex boundary
  DifferentialForm alpha;
  VectorField v;
  DifferentialForm dp;
  std::vector<FibrationComponent> components;
  std::vector<Slope> slopes;       // filled by check_nicely_fibered
  std::vector<double> dp_pairing;  // dp(V) at samples
  SampleSet samples;
  /// Distance-like normal radius to the link at a global point.
  std::function<double(const Coords&)> link_radius;
};

FibrationModel unknot_model(const SampleSpec& spec = {});
FibrationModel hopf_model(const SampleSpec& spec = {});

/// dr(V) = 0, invariance of V and dp, dp(V) > 0, inward characteristic
/// foliation. Fills slopes and dp_pairing.
Certificate check_nicely_fibered(FibrationModel& m);

struct PipelineStage {
  int index = 0;
  std::string name;
  bool pass = false;
  nlohmann::json detail;
  std::vector<Certificate> certificates;
};

struct PipelineReport {
  std::string model;
  std::vector<long> framings;
  std::vector<PipelineStage> stages;
  std::optional<int> halted_at;
  std::string halt_reason;
  std::optional<SurgeryDiagram> diagram;
  std::vector<HandleDescriptor> handles;
  bool pass() const { return !halted_at && stages.size() == 9; }
  nlohmann::json to_json() const;
};

struct PipelineOptions {
  double eps = 0.5;  // tube radius around each component in normal coordinates
  SampleSpec spec;
};

PipelineReport concavity_pipeline(FibrationModel model, const std::vector<long>& framings,
                                   const PipelineOptions& opt = {});

}  // namespace hk
