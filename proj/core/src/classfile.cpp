#include <algorithm>

#include "depexplain/classfile.hpp"
#include "depexplain/descriptor.hpp"
#include "depexplain/errors.hpp"

namespace depexplain::jvm {
namespace {

enum Tag : std::uint8_t {
  kUtf8 = 1,
  kInteger = 3,
  kFloat = 4,
  kLong = 5,
  kDouble = 6,
  kClass = 7,
  kString = 8,
  kFieldref = 9,
  kMethodref = 10,
  kInterfaceMethodref = 11,
  kNameAndType = 12,
  kMethodHandle = 15,
  kMethodType = 16,
  kDynamic = 17,
  kInvokeDynamic = 18,
  kModule = 19,
  kPackage = 20,
};

constexpr int kMaxAnnotationDepth = 32;

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u1() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u2() {
    need(2);
    auto v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u4() {
    need(4);
    std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) | (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                      (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
    pos_ += 4;
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  void skip(std::size_t n) { take(n); }
  std::size_t position() const { return pos_; }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (n > bytes_.size() - pos_)
      throw MalformedClassFile("truncated class file at offset " + std::to_string(pos_));
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct PoolEntry {
  std::uint8_t tag = 0;
  std::uint16_t ref = 0;  // name_index for Class
  std::string utf8;
};

class ConstantPool {
 public:
  explicit ConstantPool(Reader& r) {
    std::uint16_t count = r.u2();
    if (count == 0) throw MalformedClassFile("constant pool count is zero");
    entries_.resize(count);
    for (std::uint16_t i = 1; i < count; ++i) {
      PoolEntry& e = entries_[i];
      e.tag = r.u1();
      switch (e.tag) {
        case kUtf8: {
          auto len = r.u2();
          auto data = r.take(len);
          e.utf8.assign(data.begin(), data.end());
          break;
        }
        case kInteger:
        case kFloat:
          r.skip(4);
          break;
        case kLong:
        case kDouble:
          r.skip(8);
          if (++i >= count) throw MalformedClassFile("8-byte constant occupies the last pool slot");
          break;
        case kClass:
          e.ref = r.u2();
          break;
        case kString:
        case kMethodType:
        case kModule:
        case kPackage:
          r.skip(2);
          break;
        case kFieldref:
        case kMethodref:
        case kInterfaceMethodref:
        case kNameAndType:
        case kDynamic:
        case kInvokeDynamic:
          r.skip(4);
          break;
        case kMethodHandle:
          r.skip(3);
          break;
        default:
          throw MalformedClassFile("unknown constant pool tag " + std::to_string(e.tag) + " at index " +
                                   std::to_string(i));
      }
    }
  }

  const std::string& utf8(std::uint16_t index) const {
    const auto& e = at(index);
    if (e.tag != kUtf8) throw MalformedClassFile("constant " + std::to_string(index) + " is not Utf8");
    return e.utf8;
  }

  const std::string& class_name(std::uint16_t index) const {
    const auto& e = at(index);
    if (e.tag != kClass) throw MalformedClassFile("constant " + std::to_string(index) + " is not a Class");
    return utf8(e.ref);
  }

 private:
  const PoolEntry& at(std::uint16_t index) const {
    if (index == 0 || index >= entries_.size())
      throw MalformedClassFile("constant pool index " + std::to_string(index) + " out of range");
    return entries_[index];
  }

  std::vector<PoolEntry> entries_;
};

void skip_element_value(Reader& r, int depth);

// Returns true when the annotation's type is java.lang.Deprecated.
bool read_annotation(Reader& r, const ConstantPool& pool, int depth) {
  if (depth > kMaxAnnotationDepth) throw MalformedClassFile("annotation nesting too deep");
  bool deprecated = pool.utf8(r.u2()) == "Ljava/lang/Deprecated;";
  auto pairs = r.u2();
  for (std::uint16_t i = 0; i < pairs; ++i) {
    r.skip(2);
    skip_element_value(r, depth + 1);
  }
  return deprecated;
}

void skip_element_value(Reader& r, int depth) {
  if (depth > kMaxAnnotationDepth) throw MalformedClassFile("annotation nesting too deep");
  auto tag = r.u1();
  switch (tag) {
    case 'B': case 'C': case 'D': case 'F': case 'I': case 'J': case 'S': case 'Z': case 's': case 'c':
      r.skip(2);
      break;
    case 'e':
      r.skip(4);
      break;
    case '@': {
      // Nested annotation; its type is irrelevant here but must be skipped.
      r.skip(2);
      auto pairs = r.u2();
      for (std::uint16_t i = 0; i < pairs; ++i) {
        r.skip(2);
        skip_element_value(r, depth + 1);
      }
      break;
    }
    case '[': {
      auto n = r.u2();
      for (std::uint16_t i = 0; i < n; ++i) skip_element_value(r, depth + 1);
      break;
    }
    default:
      throw MalformedClassFile("bad annotation element tag " + std::to_string(tag));
  }
}

struct AttributeSummary {
  bool deprecated = false;
  bool synthetic = false;
  std::optional<std::uint16_t> inner_access;  // only for the class itself
};

AttributeSummary read_attributes(Reader& r, const ConstantPool& pool, const std::string* this_class) {
  AttributeSummary out;
  auto count = r.u2();
  for (std::uint16_t i = 0; i < count; ++i) {
    const std::string& name = pool.utf8(r.u2());
    auto length = r.u4();
    Reader body(r.take(length));
    if (name == "Deprecated") {
      out.deprecated = true;
    } else if (name == "Synthetic") {
      out.synthetic = true;
    } else if (name == "RuntimeVisibleAnnotations") {
      auto n = body.u2();
      for (std::uint16_t k = 0; k < n; ++k) {
        if (read_annotation(body, pool, 0)) out.deprecated = true;
      }
    } else if (name == "InnerClasses" && this_class != nullptr) {
      auto n = body.u2();
      for (std::uint16_t k = 0; k < n; ++k) {
        auto inner = body.u2();
        body.skip(4);
        auto flags = body.u2();
        if (inner != 0 && pool.class_name(inner) == *this_class) out.inner_access = flags;
      }
    }
  }
  return out;
}

std::string dotted(std::string internal) {
  std::replace(internal.begin(), internal.end(), '/', '.');
  return internal;
}

ConstructKind class_kind(std::uint16_t flags) {
  if (flags & access::kAnnotation) return ConstructKind::Annotation;
  if (flags & access::kEnum) return ConstructKind::Enum;
  if (flags & access::kInterface) return ConstructKind::Interface;
  return ConstructKind::Class;
}

void validate_member_name(const std::string& name, bool method) {
  if (name.empty()) throw MalformedClassFile("empty member name");
  if (name.find_first_of(".;[/") != std::string::npos)
    throw MalformedClassFile("illegal member name '" + name + "'");
  if (!method && name.find_first_of("<>") != std::string::npos)
    throw MalformedClassFile("illegal field name '" + name + "'");
  if (method && name.find_first_of("<>") != std::string::npos && name != "<init>" && name != "<clinit>")
    throw MalformedClassFile("illegal method name '" + name + "'");
}

}  // namespace

std::vector<Construct> parse_class(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.u4() != 0xCAFEBABE) throw MalformedClassFile("bad magic number");
  r.u2();  // minor
  int major = r.u2();
  if (major < 45) throw MalformedClassFile("unsupported major version " + std::to_string(major));

  ConstantPool pool(r);
  auto class_flags = r.u2();
  const std::string& this_internal = pool.class_name(r.u2());
  if (this_internal.empty() || this_internal.front() == '[')
    throw MalformedClassFile("bad this_class name '" + this_internal + "'");
  r.u2();  // super_class, may be 0 for java.lang.Object
  auto interfaces = r.u2();
  r.skip(std::size_t{interfaces} * 2);

  const std::string owner = dotted(this_internal);
  std::vector<Construct> members;

  auto fields = r.u2();
  for (std::uint16_t i = 0; i < fields; ++i) {
    Construct c;
    c.kind = ConstructKind::Field;
    c.owner = owner;
    c.access_flags = r.u2();
    c.name = pool.utf8(r.u2());
    c.descriptor = pool.utf8(r.u2());
    validate_member_name(c.name, false);
    if (!is_valid_field_descriptor(c.descriptor))
      throw MalformedClassFile("bad field descriptor '" + c.descriptor + "'");
    auto attrs = read_attributes(r, pool, nullptr);
    c.deprecated = attrs.deprecated;
    if (attrs.synthetic) c.access_flags |= access::kSynthetic;
    c.class_file_major = major;
    members.push_back(std::move(c));
  }

  auto methods = r.u2();
  for (std::uint16_t i = 0; i < methods; ++i) {
    Construct c;
    c.owner = owner;
    c.access_flags = r.u2();
    c.name = pool.utf8(r.u2());
    c.descriptor = pool.utf8(r.u2());
    validate_member_name(c.name, true);
    if (!parse_method_descriptor(c.descriptor))
      throw MalformedClassFile("bad method descriptor '" + c.descriptor + "'");
    auto attrs = read_attributes(r, pool, nullptr);
    if (c.name == "<clinit>") continue;
    c.kind = c.name == "<init>" ? ConstructKind::Constructor : ConstructKind::Method;
    c.deprecated = attrs.deprecated;
    if (attrs.synthetic) c.access_flags |= access::kSynthetic;
    c.class_file_major = major;
    members.push_back(std::move(c));
  }

  auto class_attrs = read_attributes(r, pool, &this_internal);
  if (!r.at_end()) throw MalformedClassFile("extra bytes at end of class file");

  Construct cls;
  cls.access_flags = class_attrs.inner_access.value_or(class_flags);
  if (class_attrs.synthetic) cls.access_flags |= access::kSynthetic;
  cls.kind = class_kind(class_flags | (cls.access_flags & (access::kAnnotation | access::kEnum | access::kInterface)));
  cls.owner = owner;
  auto dot = owner.rfind('.');
  cls.name = dot == std::string::npos ? owner : owner.substr(dot + 1);
  cls.deprecated = class_attrs.deprecated;
  cls.class_file_major = major;

  std::vector<Construct> out;
  out.reserve(members.size() + 1);
  out.push_back(std::move(cls));
  std::move(members.begin(), members.end(), std::back_inserter(out));
  return out;
}

int major_to_java_release(int major) {
  if (major < 45) throw UnknownMajor(major);
  return major - 44;
}

int java_release_to_major(int release) {
  if (release < 1) throw UnknownMajor(release + 44);
  return release + 44;
}

Visibility Construct::visibility() const {
  if (access_flags & access::kPublic) return Visibility::Public;
  if (access_flags & access::kProtected) return Visibility::Protected;
  if (access_flags & access::kPrivate) return Visibility::Private;
  return Visibility::Package;
}

bool Construct::is_synthetic() const {
  if (access_flags & access::kSynthetic) return true;
  return kind == ConstructKind::Method && (access_flags & access::kBridge);
}

std::vector<std::string> Construct::modifiers() const {
  struct Flag {
    std::uint16_t bit;
    const char* name;
  };
  static constexpr Flag kClassFlags[] = {
      {access::kPublic, "public"}, {access::kPrivate, "private"}, {access::kProtected, "protected"},
      {access::kStatic, "static"}, {access::kFinal, "final"},     {access::kAbstract, "abstract"},
      {access::kSynthetic, "synthetic"},
  };
  static constexpr Flag kMethodFlags[] = {
      {access::kPublic, "public"},       {access::kPrivate, "private"}, {access::kProtected, "protected"},
      {access::kStatic, "static"},       {access::kFinal, "final"},     {access::kSynchronized, "synchronized"},
      {access::kBridge, "bridge"},       {access::kVarargs, "varargs"}, {access::kNative, "native"},
      {access::kAbstract, "abstract"},   {access::kStrict, "strict"},   {access::kSynthetic, "synthetic"},
  };
  static constexpr Flag kFieldFlags[] = {
      {access::kPublic, "public"},       {access::kPrivate, "private"},     {access::kProtected, "protected"},
      {access::kStatic, "static"},       {access::kFinal, "final"},         {access::kVolatile, "volatile"},
      {access::kTransient, "transient"}, {access::kSynthetic, "synthetic"}, {access::kEnum, "enum"},
  };
  std::span<const Flag> table = kClassFlags;
  if (kind == ConstructKind::Method || kind == ConstructKind::Constructor) table = kMethodFlags;
  if (kind == ConstructKind::Field) table = kFieldFlags;
  std::vector<std::string> out;
  for (const auto& f : table)
    if (access_flags & f.bit) out.emplace_back(f.name);
  return out;
}

std::string Construct::package_name() const {
  auto dot = owner.rfind('.');
  return dot == std::string::npos ? std::string{} : owner.substr(0, dot);
}

std::string Construct::source_name() const {
  if (is_class_like(kind) || kind == ConstructKind::Constructor) return simple_class_name(owner);
  return name;
}

bool ConstructIndex::insert(Construct construct) {
  auto key = construct.key();
  int major = construct.class_file_major;
  auto [it, inserted] = constructs_.try_emplace(std::move(key), std::move(construct));
  if (inserted) max_major_ = std::max(max_major_, major);
  return inserted;
}

const Construct* ConstructIndex::find(const ConstructKey& key) const {
  auto it = constructs_.find(key);
  return it == constructs_.end() ? nullptr : &it->second;
}

std::set<std::string> ConstructIndex::class_names() const {
  std::set<std::string> out;
  for (const auto& [key, c] : constructs_)
    if (is_class_like(key.kind)) out.insert(key.owner);
  return out;
}

std::set<std::string> ConstructIndex::packages() const {
  std::set<std::string> out;
  for (const auto& [key, c] : constructs_)
    if (is_class_like(key.kind)) out.insert(c.package_name());
  return out;
}

std::string_view to_string(ConstructKind kind) {
  switch (kind) {
    case ConstructKind::Class: return "CLASS";
    case ConstructKind::Interface: return "INTERFACE";
    case ConstructKind::Enum: return "ENUM";
    case ConstructKind::Annotation: return "ANNOTATION";
    case ConstructKind::Method: return "METHOD";
    case ConstructKind::Constructor: return "CONSTRUCTOR";
    case ConstructKind::Field: return "FIELD";
  }
  return "CLASS";
}

}  // namespace depexplain::jvm
