#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lego {

// All bricks are 2x4. Orientation names the long axis in stud units.
enum class Orientation : std::uint8_t { AlongX = 0, AlongY = 1 };

constexpr int kOrientationCount = 2;

inline Orientation toggled(Orientation o) {
  return o == Orientation::AlongX ? Orientation::AlongY : Orientation::AlongX;
}

// Relative stud offset between the anchors of two connected bricks.
// Anchor = minimum-coordinate stud of the footprint.
struct EdgeLabel {
  int dx = 0;
  int dy = 0;
  auto operator<=>(const EdgeLabel&) const = default;
};

// Offset vocabulary: dx,dy in [-kMaxOffset, kMaxOffset].
constexpr int kMaxOffset = 3;
constexpr int kOffsetVocab = 2 * kMaxOffset + 1;

struct Edge {
  int src = 0;  // src provides studs to dst (dst sits on src)
  int dst = 0;
  EdgeLabel label;
  auto operator<=>(const Edge&) const = default;
};

class OverconstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Directed labeled brick graph. Node index doubles as assembly order.
class LegoGraph {
 public:
  LegoGraph() = default;

  int add_node(Orientation o) {
    nodes_.push_back(o);
    return static_cast<int>(nodes_.size()) - 1;
  }

  void add_edge(int src, int dst, EdgeLabel label) {
    const int n = node_count();
    if (src < 0 || src >= n || dst < 0 || dst >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (src == dst) throw std::invalid_argument("self-loop edge");
    if (has_edge(src, dst)) throw std::invalid_argument("duplicate (src,dst) edge");
    if (std::abs(label.dx) > kMaxOffset || std::abs(label.dy) > kMaxOffset)
      throw std::invalid_argument("edge offset outside vocabulary");
    edges_.push_back(Edge{src, dst, label});
    pairs_.insert({src, dst});
  }

  bool has_edge(int src, int dst) const { return pairs_.count({src, dst}) != 0; }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return nodes_.empty(); }

  Orientation orientation(int node) const { return nodes_.at(static_cast<std::size_t>(node)); }
  const std::vector<Orientation>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<int> class_label;

  friend bool operator==(const LegoGraph& a, const LegoGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.class_label == b.class_label;
  }

 private:
  std::vector<Orientation> nodes_;
  std::vector<Edge> edges_;
  std::set<std::pair<int, int>> pairs_;
};

// World placement of one brick. x,y in studs, z in brick heights.
struct Placement {
  int x = 0;
  int y = 0;
  int z = 0;
  Orientation orientation = Orientation::AlongX;
  auto operator<=>(const Placement&) const = default;
};

struct Cell {
  int x = 0;
  int y = 0;
  int z = 0;
  auto operator<=>(const Cell&) const = default;
};

inline int footprint_w(Orientation o) { return o == Orientation::AlongX ? 4 : 2; }
inline int footprint_h(Orientation o) { return o == Orientation::AlongX ? 2 : 4; }

// The 8 stud cells a placed brick occupies.
std::array<Cell, 8> brick_cells(const Placement& p);

// Number of shared (x,y) stud columns between two footprints (z ignored).
int column_overlap(const Placement& a, const Placement& b);

// Column overlap implied by an edge label alone, for the given orientations.
int label_overlap(Orientation src, Orientation dst, EdgeLabel label);

struct ResolvedStructure {
  std::vector<Placement> placements;  // index = node id
  std::set<Cell> occupied;
};

struct ValidityReport {
  bool connected = false;
  bool resolvable = false;
  bool collision_free = false;
  bool offsets_connectable = false;
  bool valid = false;
};

enum class EdgeDirection : std::uint8_t { Incoming = 0, Outgoing = 1 };

struct ValidOptions {
  std::set<int> destinations;
  std::map<int, std::set<EdgeLabel>> offsets;  // keyed by destination node
};

// Anchors node 0 at the origin and walks edges breadth-first; every edge is
// checked against already-assigned placements. Throws OverconstraintError or
// DisconnectedError.
ResolvedStructure resolve_placements(const LegoGraph& g);

// Never throws. Components are resolved independently (root = lowest node id
// in the component); collisions are tested within components only, since the
// relative placement of disjoint components is unconstrained.
ValidityReport check_validity(const LegoGraph& g);

// Physical support adjacencies (shared stud column, one level apart) that have
// no explicit edge. Sorted by (src, dst). Requires a valid graph.
std::vector<Edge> implied_edges(const LegoGraph& g);

// Destination/offset choices that keep the graph valid when connecting
// new_node. Incoming = candidate supports new_node; Outgoing = new_node
// supports candidate. new_node must be part of g; it may be edgeless provided
// the rest of g is valid.
ValidOptions valid_options(const LegoGraph& g, int new_node, EdgeDirection direction);

// Quarter-turn rotation about the vertical axis; orientations toggle and edge
// labels are recomputed from the rotated placements. Requires a valid graph.
LegoGraph rotate(const LegoGraph& g, int quarter_turns);

// Translation- and rotation-invariant fingerprint of the physical structure.
// Equal keys iff the brick placements coincide up to translation and rotation.
std::string canonical_key(const LegoGraph& g);

// Reindexes away one node and its incident edges; remaining ids shift down.
LegoGraph remove_node(const LegoGraph& g, int node);

// LDraw export: one part-3001 line per brick, 20 LDU per stud, 24 LDU per
// brick height, -y up. colors: one LDraw color id per node, or empty to pick
// from a fixed palette with the given seed.
std::string to_ldraw(const LegoGraph& g, const std::vector<int>& colors = {},
                     std::uint64_t color_seed = 0);

}  // namespace lego
