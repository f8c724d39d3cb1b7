#include "padiclab/groups.hpp"

#include <charconv>
#include <stdexcept>

#include "padiclab/errors.hpp"

namespace padiclab {

GroupType GroupType::gl(int n, ExtensionKind kind) {
  if (n < 1) throw DomainError("GL needs N >= 1");
  return {Family::GL, n, kind};
}

GroupType GroupType::sp(int size) {
  if (size < 2 || size % 2 != 0) throw DomainError("Sp needs an even size >= 2");
  return {Family::Sp, size, ExtensionKind::trivial};
}

GroupType GroupType::so(int size) {
  if (size < 2) throw DomainError("SO needs size >= 2");
  return {Family::SO, size, ExtensionKind::trivial};
}

GroupType GroupType::unitary(int n, ExtensionKind kind) {
  if (n < 1) throw DomainError("U needs N >= 1");
  if (kind == ExtensionKind::trivial) throw DomainError("U needs a quadratic extension");
  return {Family::U, n, kind};
}

int GroupType::rank_parameter() const { return family == Family::GL ? size : size / 2; }

std::string GroupType::to_string() const {
  std::string name;
  switch (family) {
    case Family::GL: name = "GL"; break;
    case Family::Sp: name = "Sp"; break;
    case Family::SO: name = "SO"; break;
    case Family::U: name = "U"; break;
  }
  name += "(" + std::to_string(size) + ")";
  if ((family == Family::GL || family == Family::U) && kind != ExtensionKind::trivial)
    name += "/" + padiclab::to_string(kind);
  return name;
}

GroupType parse_group(std::string_view text, ExtensionKind kind) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("group spec must look like GL:3");
  const std::string_view fam = text.substr(0, colon);
  const std::string_view num = text.substr(colon + 1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
  if (ec != std::errc() || ptr != num.data() + num.size())
    throw std::invalid_argument("bad group size in '" + std::string(text) + "'");
  if (fam == "GL") return GroupType::gl(n, kind);
  if (fam == "Sp") return GroupType::sp(n);
  if (fam == "SO") return GroupType::so(n);
  if (fam == "U") return GroupType::unitary(n, kind);
  throw std::invalid_argument("unknown group family '" + std::string(fam) + "'");
}

GroupPair GroupPair::make(int which, int rank, ExtensionKind kind) {
  if (which < 1 || which > 4) throw DomainError("pair case must be 1..4");
  if (rank < 1) throw DomainError("pair rank must be >= 1");
  if (which == 4 && kind == ExtensionKind::trivial) throw DomainError("unitary pair needs a quadratic extension");
  if (which != 4) kind = ExtensionKind::trivial;
  return {which, rank, kind};
}

GroupType GroupPair::g() const {
  switch (which) {
    case 1: return GroupType::gl(2 * rank + 1);
    case 2:
    case 3: return GroupType::gl(2 * rank);
    default: return GroupType::gl(rank, kind);
  }
}

GroupType GroupPair::g_theta() const {
  switch (which) {
    case 1: return GroupType::so(2 * rank + 1);
    case 2:
    case 3: return GroupType::sp(2 * rank);
    default: return GroupType::unitary(rank, kind);
  }
}

GroupType GroupPair::h() const {
  switch (which) {
    case 1: return GroupType::sp(2 * rank);
    case 2: return GroupType::so(2 * rank + 1);
    case 3: return GroupType::so(2 * rank);
    default: return GroupType::unitary(rank, kind);
  }
}

std::string GroupPair::to_string() const {
  return "case " + std::to_string(which) + ": " + g().to_string() + " / " + h().to_string();
}

}  // namespace padiclab
