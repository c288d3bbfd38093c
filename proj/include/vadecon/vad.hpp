#pragma once

#include <array>
#include <string_view>

namespace vadecon {

// One point in valence/arousal/dominance space, in lexicon scale units.
struct VadVector {
  double valence = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  bool operator==(const VadVector&) const = default;
};

enum class Dimension { kValence, kArousal, kDominance };

inline constexpr std::array<Dimension, 3> kAllDimensions = {
    Dimension::kValence, Dimension::kArousal, Dimension::kDominance};

inline double component(const VadVector& v, Dimension d) {
  switch (d) {
    case Dimension::kValence:
      return v.valence;
    case Dimension::kArousal:
      return v.arousal;
    default:
      return v.dominance;
  }
}

inline std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::kValence:
      return "valence";
    case Dimension::kArousal:
      return "arousal";
    default:
      return "dominance";
  }
}

inline char dimension_letter(Dimension d) {
  switch (d) {
    case Dimension::kValence:
      return 'V';
    case Dimension::kArousal:
      return 'A';
    default:
      return 'D';
  }
}

}  // namespace vadecon
