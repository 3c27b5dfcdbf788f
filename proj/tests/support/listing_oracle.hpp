#pragma once

// Reference implementations over the reflection listings produced by
// fixtures/gen/ConstructLister.java. They share no code with the library.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/apidiff.hpp"
#include "depexplain/classfile.hpp"

namespace dxtest {

struct ListedConstruct {
  std::string kind;
  std::string owner;
  std::string name;
  std::string descriptor;  // "" for class-like kinds
  std::set<std::string> modifiers;
  bool deprecated = false;
  bool synthetic = false;
  int major = 0;
};

std::vector<ListedConstruct> parse_listing(std::string_view text);

/// One line per construct: "KIND owner name descriptor mods deprecated synthetic major".
std::multiset<std::string> describe(const std::vector<ListedConstruct>& listing);
std::multiset<std::string> describe(const depexplain::jvm::ConstructIndex& index);

/// Brute-force API diff of two listings, one line per change:
///   "ADDED|REMOVED KIND owner name descriptor"
///   "MODIFIED KIND owner name old_descriptor -> new_descriptor DETAIL,DETAIL"
std::set<std::string> oracle_diff(const std::vector<ListedConstruct>& before, const std::vector<ListedConstruct>& after,
                                  bool include_private = false);

/// The same line format for a library diff.
std::set<std::string> describe(const depexplain::apidiff::ApiDiff& diff);

/// Plain dynamic-programming Levenshtein distance.
std::size_t levenshtein(const std::string& a, const std::string& b);

}  // namespace dxtest
