#pragma once

#include <set>
#include <string>

namespace dxtest {

// Java keywords (JLS 3.9, including contextual "_") plus the literals true/false/null.
inline const std::set<std::string>& java_reserved_words() {
  static const std::set<std::string> words{
      "_",         "abstract", "assert",     "boolean",   "break",      "byte",      "case",         "catch",
      "char",      "class",    "const",      "continue",  "default",    "do",        "double",       "else",
      "enum",      "extends",  "final",      "finally",   "float",      "for",       "goto",         "if",
      "implements", "import",  "instanceof", "int",       "interface",  "long",      "native",       "new",
      "package",   "private",  "protected",  "public",    "return",     "short",     "static",       "strictfp",
      "super",     "switch",   "synchronized", "this",    "throw",      "throws",    "transient",    "try",
      "void",      "volatile", "while",      "true",      "false",      "null"};
  return words;
}

}  // namespace dxtest
