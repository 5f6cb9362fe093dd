#include "fredsing/kind.hpp"

#include "fredsing/errors.hpp"

namespace fredsing {

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::Regular: return "Regular";
    case Kind::NonSimpleKernel: return "NonSimpleKernel";
    case Kind::NotOneTransverse: return "NotOneTransverse";
    case Kind::KSingularity: return "KSingularity";
    case Kind::MaximalKTransverse: return "MaximalKTransverse";
    case Kind::TransverseUpToCap: return "TransverseUpToCap";
    case Kind::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

Kind parse_kind(const std::string& name) {
  for (Kind k : {Kind::Regular, Kind::NonSimpleKernel, Kind::NotOneTransverse, Kind::KSingularity,
                 Kind::MaximalKTransverse, Kind::TransverseUpToCap, Kind::Indeterminate})
    if (to_string(k) == name) return k;
  throw UnknownName("no classification kind named '" + name + "'");
}

std::string to_string(const KindLabel& label) {
  switch (label.kind) {
    case Kind::NonSimpleKernel:
    case Kind::KSingularity:
    case Kind::MaximalKTransverse:
    case Kind::TransverseUpToCap:
      return to_string(label.kind) + "(" + std::to_string(label.k) + ")";
    default:
      return to_string(label.kind);
  }
}

}  // namespace fredsing
