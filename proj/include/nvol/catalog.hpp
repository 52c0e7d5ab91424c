#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nvol/optimizer.hpp"
#include "nvol/rational.hpp"
#include "nvol/support.hpp"

namespace nvol {

// Descriptor variants for threefold singularities. An empty k means k = infinity.
struct CyclicQuotient {
  int r;
  std::array<int, 3> weights;  // taken mod r; freeness in codimension 1 is assumed
};
struct QuotientOrder {
  int n;
  long order;
};
struct Ak {
  std::optional<int> k;  // k >= 1
};
struct Dk {
  std::optional<int> k;  // k >= 4
};
struct Ek {
  int k;  // 6, 7 or 8
};
struct TransversalADE {
  char type;  // 'A', 'D' or 'E'
  int k;
};
struct CAClass {
  int k;  // k >= 0; cA_0 is a smooth point
};
struct CubicFamily {
  int k;  // x1 x2 + x3^3 + x4^k, 3 <= k <= 6
};
struct HypersurfaceSupport {
  PolySupport f;
};
struct Smooth {};

using SingularityDescriptor = std::variant<CyclicQuotient, QuotientOrder, Ak, Dk, Ek, TransversalADE,
                                           CAClass, CubicFamily, HypersurfaceSupport, Smooth>;

// Throws kInvalidArgument when parameters are outside their ranges.
void validate(const SingularityDescriptor& d);

// Short text form, e.g. "A2", "Dinf", "E7", "cA1", "tA2", "cubic5",
// "1/3(1,1,2)", "quotient(3,24)", "smooth", "hyp:x1*x2+x3^3+x4^4".
std::string to_string(const SingularityDescriptor& d);
SingularityDescriptor parse_descriptor(std::string_view text);

bool denotes_smooth_point(const SingularityDescriptor& d);

// Normal-form equation in x1..x4 for descriptors that have one (A_k, D_k,
// E_k, A_inf, D_inf, the cubic family, transversal A_k, smooth, explicit
// supports).
std::optional<PolySupport> defining_support(const SingularityDescriptor& d);

// Closed interval of possible local volumes. refined_hi carries a numeric
// optimizer value below hi when one was computed.
struct VolumeInterval {
  Rational lo;
  Rational hi;
  std::optional<double> refined_hi;
};

using Volume = std::variant<Rational, SurdValue, VolumeInterval>;

bool is_exact(const Volume& v);
// Exact value as a surd (rational values have no surd part). Requires is_exact.
SurdValue exact_value(const Volume& v);
double numeric_value(const Volume& v);  // interval: upper end
std::string to_string(const Volume& v);

struct CatalogEntry {
  SingularityDescriptor descriptor;
  Volume volume;
  std::optional<Rational> mld;
  std::string source;
};

// n^n / order.
Rational quotient_volume(int n, long order);

// Volume upstairs of a quasi-etale cover of the given degree.
Rational cover_transfer(const Rational& vol_downstairs, long degree);
SurdValue cover_transfer(const SurdValue& vol_downstairs, long degree);

// 4 (3 + k)^3 / (9 k^2) for 3 <= k <= 6.
Rational ade_family_volume(int k);

// HypersurfaceSupport entries run the optimizer with these options.
CatalogEntry catalog_volume(const SingularityDescriptor& d, const OptimizerOptions& opts = {});

Rational mld_of(const SingularityDescriptor& d);

struct NvMldCheck {
  bool holds;
  bool equality;
  SurdValue volume;
  Rational mld;
};

NvMldCheck check_nv_mld(const SingularityDescriptor& d);

struct Classification {
  bool ge9;
  std::string reason;
};

Classification classify_volume_ge_9(const SingularityDescriptor& d, const OptimizerOptions& opts = {});

// True when no nontrivial element of the cyclic group fixes a hyperplane
// and the generator acts with order exactly r.
bool acts_freely_in_codim1(const CyclicQuotient& q);

// The cyclic quotient types with local volume at least 9 that are not
// Gorenstein hypersurface points: 1/2(1,1,1), 1/3(1,1,0), 1/3(1,1,1), 1/3(1,1,2).
// Matching is up to permuting the weights and scaling them by a unit mod r.
std::optional<std::string> listed_quotient_type(const CyclicQuotient& q);

struct KnownVolume {
  SurdValue value;
  std::vector<SingularityDescriptor> witnesses;
};

struct KnownVolumeList {
  std::vector<KnownVolume> values;  // ascending
  bool exhaustive = false;          // only a known-at-least containment
};

KnownVolumeList known_volume_list();

// Representative descriptors covering every exact closed form in the catalog.
std::vector<SingularityDescriptor> standard_descriptors();

// [{descriptor, volume, volume_numeric, mld, source}]
nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& entries);
nlohmann::json to_json(const CatalogEntry& entry);

}  // namespace nvol
