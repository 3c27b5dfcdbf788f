#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "depexplain/classfile.hpp"

namespace depexplain::jvm {

struct MethodDescriptor {
  std::vector<std::string> parameters;  // field descriptors, e.g. "Ljava/util/Date;"
  std::string return_type;              // field descriptor or "V"
};

bool is_valid_field_descriptor(std::string_view descriptor);
std::optional<MethodDescriptor> parse_method_descriptor(std::string_view descriptor);

enum class NameStyle { Simple, Qualified };

/// "Ljava/util/Date;" -> "Date" or "java.util.Date"; "[I" -> "int[]".
/// Nested classes render with '.', so "java/util/Map$Entry" -> "Map.Entry".
/// Malformed input is returned unchanged.
std::string pretty_type(std::string_view field_descriptor, NameStyle style);

/// Human-readable signature, e.g. "Timestamp between(Timestamp, Timestamp)",
/// "StringContainer(String)" for constructors, "int SIZE" for fields and
/// "interface Query" for class-like constructs.
std::string pretty_signature(const Construct& construct, NameStyle style = NameStyle::Simple);

/// Simple class name of a dot-separated binary name ("a.b.Outer$Inner" -> "Inner").
std::string simple_class_name(std::string_view binary_name);

}  // namespace depexplain::jvm
