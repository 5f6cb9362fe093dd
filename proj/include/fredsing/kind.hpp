#pragma once

#include <string>

namespace fredsing {

enum class Kind {
  Regular,
  NonSimpleKernel,
  NotOneTransverse,
  KSingularity,
  MaximalKTransverse,
  TransverseUpToCap,
  Indeterminate,
};

std::string to_string(Kind kind);
Kind parse_kind(const std::string& name);  // UnknownName

// A kind together with its integer parameter (k, kdim or k_cap; 0 if none).
struct KindLabel {
  Kind kind = Kind::Indeterminate;
  int k = 0;
  bool operator==(const KindLabel&) const = default;
};

std::string to_string(const KindLabel& label);

}  // namespace fredsing
