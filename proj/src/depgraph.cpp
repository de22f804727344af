#include "pons/depgraph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "pons/error.hpp"
#include "pons/rules.hpp"

namespace pons::deps {

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::axiom: return "axiom";
    case NodeKind::theorem: return "theorem";
    case NodeKind::declared: return "declared";
  }
  return "?";
}

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::neutral: return "NEUTRAL";
    case Classification::euclidean_only: return "EUCLIDEAN_ONLY";
    case Classification::cyclic: return "CYCLIC";
  }
  return "?";
}

void Graph::register_node(const Node& node, const std::vector<std::string>& uses) {
  if (node.name.empty()) throw Error(ErrorCode::InvalidNode, "empty node name");
  if (node.kind == NodeKind::axiom && !uses.empty())
    throw Error(ErrorCode::InvalidNode, node.name + " is an axiom and cannot use other nodes");
  const std::set<std::string> targets(uses.begin(), uses.end());

  Node incoming = node;
  incoming.placeholder = false;
  if (auto it = nodes_.find(node.name); it != nodes_.end() && !it->second.placeholder) {
    if (it->second == incoming && edges_[node.name] == targets) return;
    throw Error(ErrorCode::DuplicateNode, node.name);
  }
  for (const auto& u : targets)
    if (u.empty()) throw Error(ErrorCode::InvalidNode, node.name + " uses an empty name");
  nodes_[node.name] = incoming;
  edges_[node.name] = targets;
  for (const auto& u : targets)
    if (!contains(u)) {
      nodes_[u] = Node{u, NodeKind::declared, {}, true};
      edges_[u];
    }
}

const Node& Graph::node(std::string_view name) const {
  auto it = nodes_.find(name);
  if (it == nodes_.end()) throw Error(ErrorCode::UnknownNode, std::string(name));
  return it->second;
}

const std::set<std::string>& Graph::uses(std::string_view name) const {
  auto it = edges_.find(name);
  if (it == edges_.end()) throw Error(ErrorCode::UnknownNode, std::string(name));
  return it->second;
}

std::size_t Graph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [_, targets] : edges_) n += targets.size();
  return n;
}

void register_builtin_axioms(Graph& g) {
  for (const auto& name : builtin_axioms())
    if (!g.contains(name) || g.node(name).placeholder)
      g.register_node(Node{std::string(name), NodeKind::axiom, {Tag::neutral}, false}, {});
}

namespace {

// Strongly connected components, Tarjan's algorithm with an explicit stack.
struct Components {
  std::map<std::string, int, std::less<>> index_of;
  std::vector<std::string> names;
  std::vector<int> component;
  std::vector<std::vector<int>> members;
  std::vector<bool> cyclic;
};

Components components(const Graph& g) {
  Components c;
  for (const auto& [name, _] : g.nodes()) {
    c.index_of[name] = static_cast<int>(c.names.size());
    c.names.push_back(name);
  }
  const int n = static_cast<int>(c.names.size());
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v)
    for (const auto& u : g.uses(c.names[v])) adj[v].push_back(c.index_of.at(u));

  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  c.component.assign(n, -1);
  int counter = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, next] = work.back();
      if (next < adj[v].size()) {
        const int w = adj[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
      if (low[done] == index[done]) {
        const int id = static_cast<int>(c.members.size());
        c.members.emplace_back();
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          c.component[w] = id;
          c.members[id].push_back(w);
        } while (w != done);
      }
    }
  }

  c.cyclic.assign(c.members.size(), false);
  for (std::size_t id = 0; id < c.members.size(); ++id) {
    const auto& m = c.members[id];
    if (m.size() > 1) {
      c.cyclic[id] = true;
    } else {
      const int v = m.front();
      c.cyclic[id] = std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
    }
  }
  return c;
}

template <class Visit>
void reach(const Graph& g, std::string_view start, Visit visit) {
  std::set<std::string, std::less<>> seen;
  std::vector<std::string> todo{std::string(g.node(start).name)};
  seen.insert(todo.front());
  while (!todo.empty()) {
    std::string v = std::move(todo.back());
    todo.pop_back();
    visit(v);
    for (const auto& u : g.uses(v))
      if (seen.insert(u).second) todo.push_back(u);
  }
}

bool is_dot_id(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return lower != "node" && lower != "edge" && lower != "graph" && lower != "digraph" &&
         lower != "subgraph" && lower != "strict";
}

std::string dot_id(std::string_view s) {
  if (is_dot_id(s)) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::vector<std::string>> detect_cycles(const Graph& g) {
  const Components c = components(g);
  std::vector<std::vector<std::string>> out;
  for (std::size_t id = 0; id < c.members.size(); ++id) {
    if (!c.cyclic[id]) continue;
    std::vector<std::string> names;
    for (int v : c.members[id]) names.push_back(c.names[v]);
    std::sort(names.begin(), names.end());
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> axiom_basis(const Graph& g, std::string_view name) {
  std::set<std::string> out;
  reach(g, name, [&](const std::string& v) {
    if (g.node(v).kind == NodeKind::axiom) out.insert(v);
  });
  return out;
}

Classification classify(const Graph& g, std::string_view name) {
  g.node(name);
  const Components c = components(g);
  bool cyclic = false, euclidean = false;
  reach(g, name, [&](const std::string& v) {
    if (c.cyclic[c.component[c.index_of.at(v)]]) cyclic = true;
    const Node& n = g.node(v);
    if (n.kind == NodeKind::axiom && n.tags.count(Tag::euclidean)) euclidean = true;
  });
  if (cyclic) return Classification::cyclic;
  return euclidean ? Classification::euclidean_only : Classification::neutral;
}

std::string emit_dot(const Graph& g) {
  const Components c = components(g);
  std::ostringstream out;
  out << "digraph deps {\n";
  if (!g.nodes().empty()) out << "  node [shape=box];\n";
  for (const auto& [name, n] : g.nodes()) {
    std::vector<std::string> attrs;
    if (n.kind == NodeKind::axiom) attrs.emplace_back("shape=ellipse");
    if (n.kind == NodeKind::axiom && n.tags.count(Tag::euclidean))
      attrs.emplace_back("style=filled, fillcolor=lightgoldenrod");
    else if (n.placeholder)
      attrs.emplace_back("style=dashed");
    if (c.cyclic[c.component[c.index_of.at(name)]])
      attrs.emplace_back("color=red, fontcolor=red, penwidth=2");
    out << "  " << dot_id(name);
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  for (const auto& [name, _] : g.nodes())
    for (const auto& u : g.uses(name)) out << "  " << dot_id(name) << " -> " << dot_id(u) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace pons::deps
