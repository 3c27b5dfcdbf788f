#include "depexplain/deptree.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "depexplain/errors.hpp"

namespace depexplain::deptree {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

bool is_connector(char c) { return c == '+' || c == '\\' || c == '|' || c == '-' || c == ' '; }

DependencyNode parse_node(std::string_view token, std::size_t line_number) {
  // Verbose dumps wrap omitted nodes as "(g:a:p:v:scope - omitted for ...)".
  if (token.starts_with('(')) token.remove_prefix(1);
  if (auto space = token.find(' '); space != std::string_view::npos) token = token.substr(0, space);
  auto fields = split(token, ':');
  if (fields.size() < 4 || fields.size() > 6)
    throw MalformedTreeLine(line_number, "expected group:artifact:packaging:version[:scope], got '" +
                                             std::string(token) + "'");
  DependencyNode node;
  node.group = fields[0];
  node.artifact = fields[1];
  node.packaging = fields[2];
  if (fields.size() == 6) {
    node.classifier = fields[3];
    node.version = fields[4];
    node.scope = fields[5];
  } else {
    node.version = fields[3];
    if (fields.size() == 5) node.scope = fields[4];
  }
  for (const auto& f : fields)
    if (f.empty()) throw MalformedTreeLine(line_number, "empty coordinate field in '" + std::string(token) + "'");
  return node;
}

void render_node(const DependencyNode& node, std::string& prefix, bool last, bool root, std::string& out) {
  out += prefix;
  if (!root) out += last ? "\\- " : "+- ";
  out += node.group + ":" + node.artifact + ":" + node.packaging + ":";
  if (node.classifier) out += *node.classifier + ":";
  out += node.version;
  if (node.scope) out += ":" + *node.scope;
  out += '\n';
  auto saved = prefix.size();
  if (!root) prefix += last ? "   " : "|  ";
  for (std::size_t i = 0; i < node.children.size(); ++i)
    render_node(node.children[i], prefix, i + 1 == node.children.size(), false, out);
  prefix.resize(saved);
}

struct Occurrence {
  std::string version;
  std::optional<std::string> scope;
  std::vector<Coordinates> path;
};

std::map<DependencyKey, Occurrence> flatten(const DependencyNode& root) {
  std::map<DependencyKey, Occurrence> out;
  struct Item {
    const DependencyNode* node;
    std::vector<Coordinates> path;
  };
  std::deque<Item> queue;
  queue.push_back({&root, {root.coordinates()}});
  while (!queue.empty()) {
    auto item = std::move(queue.front());
    queue.pop_front();
    if (item.node != &root) out.try_emplace(item.node->key(), Occurrence{item.node->version, item.node->scope, item.path});
    for (const auto& child : item.node->children) {
      auto path = item.path;
      path.push_back(child.coordinates());
      queue.push_back({&child, std::move(path)});
    }
  }
  return out;
}

}  // namespace

DependencyNode parse_tree(std::string_view text) {
  std::vector<DependencyNode*> stack;  // stack[d] = last node seen at depth d
  std::optional<DependencyNode> root;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.starts_with("[INFO] ")) line.remove_prefix(7);
    else if (line == "[INFO]") line = {};
    if (line.find_first_not_of(' ') == std::string_view::npos) continue;

    std::size_t offset = 0;
    while (offset < line.size() && is_connector(line[offset])) ++offset;
    if (offset == line.size()) throw MalformedTreeLine(line_number, "connector without a node");
    if (offset % 3 != 0) throw MalformedTreeLine(line_number, "misaligned tree connector");
    auto node = parse_node(line.substr(offset), line_number);
    std::size_t depth = offset / 3;

    if (!root) {
      if (depth != 0) throw MalformedTreeLine(line_number, "first node must be the root");
      root = std::move(node);
      stack = {&*root};
      continue;
    }
    if (depth == 0) throw MalformedTreeLine(line_number, "second root node");
    if (depth > stack.size()) throw MalformedTreeLine(line_number, "node is indented more than one level");
    stack.resize(depth);
    auto& siblings = stack.back()->children;
    siblings.push_back(std::move(node));
    stack.push_back(&siblings.back());
  }
  if (!root) throw MalformedTreeLine(line_number, "empty dependency tree");
  return std::move(*root);
}

std::string render_tree(const DependencyNode& root) {
  std::string out;
  std::string prefix;
  render_node(root, prefix, true, true, out);
  return out;
}

bool DeltaEntry::compile_reachable() const {
  auto scope = new_scope ? new_scope : old_scope;
  return !scope || (*scope != "test" && *scope != "provided");
}

const DeltaEntry* TreeDelta::find(const DependencyKey& key) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), key,
                             [](const DeltaEntry& e, const DependencyKey& k) { return e.key < k; });
  return it != entries.end() && it->key == key ? &*it : nullptr;
}

std::vector<const DeltaEntry*> TreeDelta::with_status(DeltaStatus status) const {
  std::vector<const DeltaEntry*> out;
  for (const auto& e : entries)
    if (e.status == status) out.push_back(&e);
  return out;
}

TreeDelta diff_trees(const DependencyNode& old_root, const DependencyNode& new_root) {
  auto before = flatten(old_root);
  auto after = flatten(new_root);
  TreeDelta delta;
  auto b = before.begin();
  auto a = after.begin();
  while (b != before.end() || a != after.end()) {
    DeltaEntry e;
    if (a == after.end() || (b != before.end() && b->first < a->first)) {
      e.key = b->first;
      e.status = DeltaStatus::Removed;
      e.old_version = b->second.version;
      e.old_path = b->second.path;
      e.old_scope = b->second.scope;
      ++b;
    } else if (b == before.end() || a->first < b->first) {
      e.key = a->first;
      e.status = DeltaStatus::Added;
      e.new_version = a->second.version;
      e.new_path = a->second.path;
      e.new_scope = a->second.scope;
      ++a;
    } else {
      e.key = b->first;
      e.status = b->second.version == a->second.version ? DeltaStatus::Unchanged : DeltaStatus::Updated;
      e.old_version = b->second.version;
      e.new_version = a->second.version;
      e.old_path = b->second.path;
      e.new_path = a->second.path;
      e.old_scope = b->second.scope;
      e.new_scope = a->second.scope;
      ++a;
      ++b;
    }
    delta.entries.push_back(std::move(e));
  }
  return delta;
}

std::set<std::string> class_overlap(const jvm::ConstructIndex& added, const jvm::ConstructIndex& existing) {
  std::set<std::string> out;
  auto mine = added.class_names();
  auto theirs = existing.class_names();
  std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::inserter(out, out.end()));
  return out;
}

std::string render_path(const std::vector<Coordinates>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += std::string(3 * (i - 1), ' ') + "\\- ";
    out += path[i].to_string() + "\n";
  }
  return out;
}

std::string_view to_string(DeltaStatus status) {
  switch (status) {
    case DeltaStatus::Unchanged: return "UNCHANGED";
    case DeltaStatus::Removed: return "REMOVED";
    case DeltaStatus::Added: return "ADDED";
    case DeltaStatus::Updated: return "UPDATED";
  }
  return "UNCHANGED";
}

}  // namespace depexplain::deptree
