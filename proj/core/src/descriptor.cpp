#include "depexplain/descriptor.hpp"

#include <algorithm>

namespace depexplain::jvm {
namespace {

// Length of the field descriptor starting at `s`, or 0 if malformed.
std::size_t field_descriptor_length(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == '[') {
    ++i;
    if (i > 255) return 0;
  }
  if (i >= s.size()) return 0;
  switch (s[i]) {
    case 'B': case 'C': case 'D': case 'F': case 'I': case 'J': case 'S': case 'Z':
      return i + 1;
    case 'L': {
      auto end = s.find(';', i);
      if (end == std::string_view::npos || end == i + 1) return 0;
      auto name = s.substr(i + 1, end - i - 1);
      if (name.find_first_of(".[") != std::string_view::npos) return 0;
      return end + 1;
    }
    default:
      return 0;
  }
}

std::string_view primitive_name(char c) {
  switch (c) {
    case 'B': return "byte";
    case 'C': return "char";
    case 'D': return "double";
    case 'F': return "float";
    case 'I': return "int";
    case 'J': return "long";
    case 'S': return "short";
    case 'Z': return "boolean";
    case 'V': return "void";
  }
  return {};
}

std::string class_display_name(std::string_view internal, NameStyle style) {
  std::string name(internal);
  std::replace(name.begin(), name.end(), '/', '.');
  if (style == NameStyle::Simple) {
    auto dot = name.rfind('.');
    if (dot != std::string::npos) name.erase(0, dot + 1);
  }
  std::replace(name.begin(), name.end(), '$', '.');
  return name;
}

}  // namespace

bool is_valid_field_descriptor(std::string_view descriptor) {
  auto n = field_descriptor_length(descriptor);
  return n != 0 && n == descriptor.size();
}

std::optional<MethodDescriptor> parse_method_descriptor(std::string_view d) {
  if (d.size() < 3 || d.front() != '(') return std::nullopt;
  MethodDescriptor out;
  std::size_t i = 1;
  while (i < d.size() && d[i] != ')') {
    auto n = field_descriptor_length(d.substr(i));
    if (n == 0) return std::nullopt;
    out.parameters.emplace_back(d.substr(i, n));
    i += n;
  }
  if (i >= d.size()) return std::nullopt;
  auto ret = d.substr(i + 1);
  if (ret == "V" || is_valid_field_descriptor(ret)) {
    out.return_type = std::string(ret);
    return out;
  }
  return std::nullopt;
}

std::string pretty_type(std::string_view d, NameStyle style) {
  if (d == "V") return "void";
  if (!is_valid_field_descriptor(d)) return std::string(d);
  std::size_t dims = 0;
  while (d[dims] == '[') ++dims;
  std::string base = d[dims] == 'L' ? class_display_name(d.substr(dims + 1, d.size() - dims - 2), style)
                                    : std::string(primitive_name(d[dims]));
  for (std::size_t k = 0; k < dims; ++k) base += "[]";
  return base;
}

std::string simple_class_name(std::string_view binary_name) {
  auto dot = binary_name.rfind('.');
  auto simple = dot == std::string_view::npos ? binary_name : binary_name.substr(dot + 1);
  auto dollar = simple.rfind('$');
  if (dollar != std::string_view::npos && dollar + 1 < simple.size()) simple = simple.substr(dollar + 1);
  return std::string(simple);
}

std::string pretty_signature(const Construct& c, NameStyle style) {
  auto owner_name = [&] {
    return style == NameStyle::Simple ? simple_class_name(c.owner) : class_display_name(c.owner, NameStyle::Qualified);
  };
  switch (c.kind) {
    case ConstructKind::Class: return "class " + owner_name();
    case ConstructKind::Interface: return "interface " + owner_name();
    case ConstructKind::Enum: return "enum " + owner_name();
    case ConstructKind::Annotation: return "@interface " + owner_name();
    case ConstructKind::Field: return pretty_type(c.descriptor, style) + " " + c.name;
    case ConstructKind::Method:
    case ConstructKind::Constructor: {
      auto md = parse_method_descriptor(c.descriptor);
      if (!md) return c.name + c.descriptor;
      std::string out;
      if (c.kind == ConstructKind::Constructor) {
        out = simple_class_name(c.owner);
      } else {
        out = pretty_type(md->return_type, style) + " " + c.name;
      }
      out += "(";
      for (std::size_t i = 0; i < md->parameters.size(); ++i) {
        if (i) out += ", ";
        out += pretty_type(md->parameters[i], style);
      }
      out += ")";
      return out;
    }
  }
  return c.name;
}

}  // namespace depexplain::jvm
