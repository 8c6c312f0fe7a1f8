#include <sstream>

#include "hk/surgery.hpp"

namespace hk {

std::string to_string(ComponentRole r) {
  switch (r) {
    case ComponentRole::surgered: return "surgered";
    case ComponentRole::ambient: return "ambient";
    case ComponentRole::leaf: return "leaf";
  }
  return "?";
}

std::string SurgeryDiagram::text() const {
  std::ostringstream os;
  os << "# ambient: " << ambient << "\n";
  for (const auto& c : components) os << c.tag << " " << c.framing << " " << to_string(c.role) << "\n";
  os << "# admissible: " << (admissible ? "yes" : "no");
  if (!reason.empty()) os << " (" << reason << ")";
  os << "\n";
  return os.str();
}

nlohmann::json SurgeryDiagram::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components)
    comps.push_back({{"tag", c.tag}, {"framing", c.framing}, {"role", to_string(c.role)}});
  return {{"schema_version", kCertificateSchema}, {"ambient", ambient}, {"components", comps}, {"admissible", admissible}, {"reason", reason}};
}

namespace {

// Marks the diagram inadmissible at the first surgered component whose
// framing is not positive with respect to its fiber slope.
void judge(SurgeryDiagram& d, const std::vector<Slope>& slopes) {
  std::size_t k = 0;
  for (const auto& c : d.components) {
    if (c.role != ComponentRole::surgered) continue;
    const Slope& s = slopes[k++];
    if (!positivity_wrt_fibration(s, c.framing)) {
      d.admissible = false;
      d.reason = "framing " + std::to_string(c.framing) + " on " + c.tag +
                 " is not greater than the fiber slope " + to_string(s);
      return;
    }
  }
  d.reason = "every surgered framing exceeds its fiber slope";
}

}  // namespace

SurgeryDiagram emit_unknot(long F) {
  SurgeryDiagram d;
  d.components.push_back({"unknot", F, ComponentRole::surgered});
  judge(d, {Rational(0)});
  return d;
}

SurgeryDiagram emit_hopf(long F1, long F2) {
  SurgeryDiagram d;
  d.components.push_back({"hopf-1", F1, ComponentRole::surgered});
  d.components.push_back({"hopf-2", F2, ComponentRole::surgered});
  judge(d, {Rational(-1), Rational(-1)});
  return d;
}

SurgeryDiagram emit_surface(int genus, int boundary_components, const std::vector<long>& framings,
                            const std::vector<int>& leaf_counts) {
  if (genus < 0 || boundary_components < 1)
    throw ParameterError("emit_surface: need genus >= 0 and at least one boundary component");
  if (static_cast<int>(framings.size()) != boundary_components)
    throw ParameterError("emit_surface: one framing per boundary component");
  const int unknots = 2 * genus + boundary_components - 1;
  SurgeryDiagram d;
  d.ambient = "S3 with " + std::to_string(unknots) + " zero-framed unknots";
  for (int i = 0; i < unknots; ++i)
    d.components.push_back({"ambient-unknot-" + std::to_string(i + 1), 0, ComponentRole::ambient});
  for (int i = 0; i < boundary_components; ++i)
    d.components.push_back({"binding-" + std::to_string(i + 1), framings[i], ComponentRole::surgered});
  int leaf = 0;
  for (int count : leaf_counts) {
    if (count < 0) throw ParameterError("emit_surface: negative leaf count");
    for (int i = 0; i < count; ++i) d.components.push_back({"leaf-" + std::to_string(++leaf), -1, ComponentRole::leaf});
  }
  judge(d, std::vector<Slope>(boundary_components, Rational(0)));
  return d;
}

}  // namespace hk
