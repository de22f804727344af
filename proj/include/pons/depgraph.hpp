#pragma once

// Theorem/axiom dependency graph. Edges point from a user to what it uses.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pons/kernel.hpp"

namespace pons::deps {

enum class NodeKind { axiom, theorem, declared };
enum class Classification { neutral, euclidean_only, cyclic };

std::string_view kind_name(NodeKind kind);
std::string_view classification_name(Classification c);  // NEUTRAL, EUCLIDEAN_ONLY, CYCLIC

struct Node {
  std::string name;
  NodeKind kind = NodeKind::declared;
  std::set<Tag> tags;
  // Created because something used this name before it was registered.
  bool placeholder = false;
  bool operator==(const Node&) const = default;
};

class Graph {
 public:
  // Adds the node and one edge per used name. Unknown used names become
  // placeholder declared nodes; registering a placeholder's name replaces it.
  // Re-registering an identical node is a no-op, a different one throws
  // DuplicateNode. Axioms may not use anything (InvalidNode).
  void register_node(const Node& node, const std::vector<std::string>& uses);

  bool contains(std::string_view name) const { return nodes_.find(name) != nodes_.end(); }
  const Node& node(std::string_view name) const;
  const std::set<std::string>& uses(std::string_view name) const;

  const std::map<std::string, Node, std::less<>>& nodes() const { return nodes_; }
  std::size_t edge_count() const;

  bool operator==(const Graph&) const = default;

 private:
  std::map<std::string, Node, std::less<>> nodes_;
  std::map<std::string, std::set<std::string>, std::less<>> edges_;
};

// Kernel rules and constructions as neutral axiom nodes.
void register_builtin_axioms(Graph& g);

// One entry per strongly connected component with at least two nodes or a
// self-loop; names sorted inside each cycle, cycles sorted.
std::vector<std::vector<std::string>> detect_cycles(const Graph& g);

std::set<std::string> axiom_basis(const Graph& g, std::string_view name);

Classification classify(const Graph& g, std::string_view name);

std::string emit_dot(const Graph& g);

}  // namespace pons::deps
