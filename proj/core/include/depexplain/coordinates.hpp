#pragma once

#include <compare>
#include <string>

namespace depexplain {

// Maven coordinates of one artifact version.
struct Coordinates {
  std::string group;
  std::string artifact;
  std::string version;

  std::string to_string() const { return group + ":" + artifact + ":" + version; }
  auto operator<=>(const Coordinates&) const = default;
};

// Version-less identity of an artifact, used to match the same dependency
// across two trees.
struct DependencyKey {
  std::string group;
  std::string artifact;

  std::string to_string() const { return group + ":" + artifact; }
  auto operator<=>(const DependencyKey&) const = default;
};

}  // namespace depexplain
