#include "lego/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <sstream>

namespace lego {

std::array<Cell, 8> brick_cells(const Placement& p) {
  std::array<Cell, 8> cells;
  const int w = footprint_w(p.orientation);
  const int h = footprint_h(p.orientation);
  int i = 0;
  for (int cx = 0; cx < w; ++cx)
    for (int cy = 0; cy < h; ++cy) cells[i++] = Cell{p.x + cx, p.y + cy, p.z};
  return cells;
}

namespace {

int interval_overlap(int a0, int a1, int b0, int b1) {
  return std::max(0, std::min(a1, b1) - std::max(a0, b0) + 1);
}

}  // namespace

int column_overlap(const Placement& a, const Placement& b) {
  const int ox = interval_overlap(a.x, a.x + footprint_w(a.orientation) - 1, b.x,
                                  b.x + footprint_w(b.orientation) - 1);
  const int oy = interval_overlap(a.y, a.y + footprint_h(a.orientation) - 1, b.y,
                                  b.y + footprint_h(b.orientation) - 1);
  return ox * oy;
}

int label_overlap(Orientation src, Orientation dst, EdgeLabel label) {
  const Placement a{0, 0, 0, src};
  const Placement b{label.dx, label.dy, 0, dst};
  return column_overlap(a, b);
}

namespace {

struct ComponentResolution {
  bool resolvable = true;
  bool connected = true;
  // Defined for every node when resolvable; per-component anchored at origin.
  std::vector<Placement> placements;
};

// Shared constraint walk: per component, root = lowest node id, anchored at
// the origin, neighbors visited in ascending node id order. Every edge is
// verified against the final assignment.
ComponentResolution resolve_all_components(const LegoGraph& g) {
  ComponentResolution out;
  const int n = g.node_count();
  out.placements.assign(static_cast<std::size_t>(n), Placement{});
  if (n == 0) return out;

  // Edge constraints indexed by endpoint, ordered by neighbor id so the FIFO
  // walk assigns ties in ascending node id order.
  std::vector<std::vector<const Edge*>> incident(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    incident[static_cast<std::size_t>(e.src)].push_back(&e);
    incident[static_cast<std::size_t>(e.dst)].push_back(&e);
  }
  for (int v = 0; v < n; ++v) {
    auto& inc = incident[static_cast<std::size_t>(v)];
    std::stable_sort(inc.begin(), inc.end(), [v](const Edge* a, const Edge* b) {
      const int na = a->src == v ? a->dst : a->src;
      const int nb = b->src == v ? b->dst : b->src;
      return na < nb;
    });
  }

  std::vector<bool> assigned(static_cast<std::size_t>(n), false);
  int components = 0;
  for (int root = 0; root < n; ++root) {
    if (assigned[static_cast<std::size_t>(root)]) continue;
    ++components;
    assigned[static_cast<std::size_t>(root)] = true;
    out.placements[static_cast<std::size_t>(root)] = Placement{0, 0, 0, g.orientation(root)};
    std::queue<int> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      const Placement pu = out.placements[static_cast<std::size_t>(u)];
      for (const Edge* e : incident[static_cast<std::size_t>(u)]) {
        const bool forward = e->src == u;
        const int v = forward ? e->dst : e->src;
        Placement pv;
        pv.orientation = g.orientation(v);
        if (forward) {
          pv.x = pu.x + e->label.dx;
          pv.y = pu.y + e->label.dy;
          pv.z = pu.z + 1;
        } else {
          pv.x = pu.x - e->label.dx;
          pv.y = pu.y - e->label.dy;
          pv.z = pu.z - 1;
        }
        if (!assigned[static_cast<std::size_t>(v)]) {
          assigned[static_cast<std::size_t>(v)] = true;
          out.placements[static_cast<std::size_t>(v)] = pv;
          frontier.push(v);
        }
      }
    }
  }
  out.connected = components <= 1;

  for (const Edge& e : g.edges()) {
    const Placement& ps = out.placements[static_cast<std::size_t>(e.src)];
    const Placement& pd = out.placements[static_cast<std::size_t>(e.dst)];
    if (pd.x != ps.x + e.label.dx || pd.y != ps.y + e.label.dy || pd.z != ps.z + 1) {
      out.resolvable = false;
      break;
    }
  }
  return out;
}

bool component_collision_free(const LegoGraph& g, const std::vector<Placement>& placements,
                              const std::vector<int>& component_of) {
  std::vector<std::pair<int, Cell>> cells;
  cells.reserve(static_cast<std::size_t>(g.node_count()) * 8);
  for (int v = 0; v < g.node_count(); ++v) {
    for (const Cell& c : brick_cells(placements[static_cast<std::size_t>(v)]))
      cells.emplace_back(component_of[static_cast<std::size_t>(v)], c);
  }
  std::sort(cells.begin(), cells.end());
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (cells[i] == cells[i - 1]) return false;
  return true;
}

std::vector<int> label_components(const LegoGraph& g) {
  const int n = g.node_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.src)].push_back(e.dst);
    adj[static_cast<std::size_t>(e.dst)].push_back(e.src);
  }
  int next = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[static_cast<std::size_t>(root)] >= 0) continue;
    comp[static_cast<std::size_t>(root)] = next;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = next;
          q.push(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool edges_connectable(const LegoGraph& g) {
  for (const Edge& e : g.edges())
    if (label_overlap(g.orientation(e.src), g.orientation(e.dst), e.label) == 0) return false;
  return true;
}

void require_valid(const LegoGraph& g, const char* op) {
  if (!check_validity(g).valid)
    throw InvalidGraphError(std::string(op) + " requires a valid graph");
}

}  // namespace

ResolvedStructure resolve_placements(const LegoGraph& g) {
  if (g.empty()) throw DisconnectedError("resolve_placements: empty graph");
  const ComponentResolution r = resolve_all_components(g);
  if (!r.connected) throw DisconnectedError("resolve_placements: graph is disconnected");
  if (!r.resolvable)
    throw OverconstraintError("resolve_placements: contradictory edge constraints");
  ResolvedStructure out;
  out.placements = r.placements;
  for (const Placement& p : out.placements)
    for (const Cell& c : brick_cells(p)) out.occupied.insert(c);
  return out;
}

ValidityReport check_validity(const LegoGraph& g) {
  ValidityReport rep;
  if (g.empty()) {
    rep.connected = rep.resolvable = rep.collision_free = rep.offsets_connectable = true;
    rep.valid = true;
    return rep;
  }
  const ComponentResolution r = resolve_all_components(g);
  rep.connected = r.connected;
  rep.resolvable = r.resolvable;
  rep.offsets_connectable = edges_connectable(g);
  rep.collision_free =
      r.resolvable ? component_collision_free(g, r.placements, label_components(g)) : false;
  rep.valid = rep.connected && rep.resolvable && rep.collision_free && rep.offsets_connectable;
  return rep;
}

std::vector<Edge> implied_edges(const LegoGraph& g) {
  require_valid(g, "implied_edges");
  std::vector<Edge> out;
  if (g.empty()) return out;
  const ResolvedStructure r = resolve_placements(g);
  const int n = g.node_count();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || g.has_edge(u, v)) continue;
      const Placement& pu = r.placements[static_cast<std::size_t>(u)];
      const Placement& pv = r.placements[static_cast<std::size_t>(v)];
      if (pv.z != pu.z + 1) continue;
      if (column_overlap(pu, pv) == 0) continue;
      out.push_back(Edge{u, v, EdgeLabel{pv.x - pu.x, pv.y - pu.y}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValidOptions valid_options(const LegoGraph& g, int new_node, EdgeDirection direction) {
  ValidOptions out;
  const int n = g.node_count();
  if (new_node < 0 || new_node >= n || n < 2) return out;

  const ComponentResolution r = resolve_all_components(g);
  if (!r.resolvable) return out;

  // Split the graph into the new node and its context. The context must be
  // valid on its own; the new node is either already placed consistently or
  // still floating (no incident edges).
  bool new_constrained = false;
  for (const Edge& e : g.edges())
    if (e.src == new_node || e.dst == new_node) new_constrained = true;

  if (new_constrained) {
    if (!check_validity(g).valid) return out;
  } else {
    // Context = everything but the floating node; it must be one valid piece.
    LegoGraph context = remove_node(g, new_node);
    if (!context.empty() && !check_validity(context).valid) return out;
  }

  // Occupied cells of the context, in the resolved frame of the component
  // layout. With new_constrained, exclude nothing (its cells are real);
  // otherwise exclude the floating node's provisional cells.
  std::set<Cell> occupied;
  for (int v = 0; v < n; ++v) {
    if (!new_constrained && v == new_node) continue;
    for (const Cell& c : brick_cells(r.placements[static_cast<std::size_t>(v)]))
      occupied.insert(c);
  }

  const Orientation new_orient = g.orientation(new_node);
  const Placement new_place = r.placements[static_cast<std::size_t>(new_node)];

  for (int cand = 0; cand < n; ++cand) {
    if (cand == new_node) continue;
    // src supports dst: Incoming means cand -> new_node.
    const int src = direction == EdgeDirection::Incoming ? cand : new_node;
    const int dst = direction == EdgeDirection::Incoming ? new_node : cand;
    if (g.has_edge(src, dst)) continue;
    const Placement& pc = r.placements[static_cast<std::size_t>(cand)];
    std::set<EdgeLabel> labels;

    if (new_constrained) {
      // Placement already fixed; at most one label can be consistent.
      const Placement& ps = direction == EdgeDirection::Incoming ? pc : new_place;
      const Placement& pd = direction == EdgeDirection::Incoming ? new_place : pc;
      if (pd.z == ps.z + 1) {
        const EdgeLabel lab{pd.x - ps.x, pd.y - ps.y};
        if (std::abs(lab.dx) <= kMaxOffset && std::abs(lab.dy) <= kMaxOffset &&
            column_overlap(ps, pd) > 0)
          labels.insert(lab);
      }
    } else {
      for (int dx = -kMaxOffset; dx <= kMaxOffset; ++dx) {
        for (int dy = -kMaxOffset; dy <= kMaxOffset; ++dy) {
          const EdgeLabel lab{dx, dy};
          Placement pn;
          pn.orientation = new_orient;
          if (direction == EdgeDirection::Incoming) {
            pn.x = pc.x + dx;
            pn.y = pc.y + dy;
            pn.z = pc.z + 1;
            if (label_overlap(pc.orientation, new_orient, lab) == 0) continue;
          } else {
            pn.x = pc.x - dx;
            pn.y = pc.y - dy;
            pn.z = pc.z - 1;
            if (label_overlap(new_orient, pc.orientation, lab) == 0) continue;
          }
          bool collides = false;
          for (const Cell& c : brick_cells(pn)) {
            if (occupied.count(c)) {
              collides = true;
              break;
            }
          }
          if (!collides) labels.insert(lab);
        }
      }
    }

    if (!labels.empty()) {
      out.destinations.insert(cand);
      out.offsets[cand] = std::move(labels);
    }
  }
  return out;
}

namespace {

Placement rotate_once(const Placement& p) {
  // (x, y) -> (-y, x) applied to cells; min corner recomputed.
  Placement out;
  out.orientation = toggled(p.orientation);
  out.x = -(p.y + footprint_h(p.orientation) - 1);
  out.y = p.x;
  out.z = p.z;
  return out;
}

Placement rotate_times(Placement p, int turns) {
  for (int i = 0; i < turns; ++i) p = rotate_once(p);
  return p;
}

}  // namespace

LegoGraph rotate(const LegoGraph& g, int quarter_turns) {
  require_valid(g, "rotate");
  const int turns = ((quarter_turns % 4) + 4) % 4;
  LegoGraph out;
  out.class_label = g.class_label;
  if (g.empty()) return out;
  const ResolvedStructure r = resolve_placements(g);
  std::vector<Placement> rotated(r.placements.size());
  for (std::size_t i = 0; i < r.placements.size(); ++i)
    rotated[i] = rotate_times(r.placements[i], turns);
  for (int v = 0; v < g.node_count(); ++v)
    out.add_node(rotated[static_cast<std::size_t>(v)].orientation);
  for (const Edge& e : g.edges()) {
    const Placement& ps = rotated[static_cast<std::size_t>(e.src)];
    const Placement& pd = rotated[static_cast<std::size_t>(e.dst)];
    out.add_edge(e.src, e.dst, EdgeLabel{pd.x - ps.x, pd.y - ps.y});
  }
  return out;
}

std::string canonical_key(const LegoGraph& g) {
  require_valid(g, "canonical_key");
  if (g.empty()) return "empty";
  const ResolvedStructure r = resolve_placements(g);
  std::string best;
  for (int turns = 0; turns < 4; ++turns) {
    std::vector<Placement> ps(r.placements.size());
    for (std::size_t i = 0; i < r.placements.size(); ++i)
      ps[i] = rotate_times(r.placements[i], turns);
    int mx = ps[0].x, my = ps[0].y, mz = ps[0].z;
    for (const Placement& p : ps) {
      mx = std::min(mx, p.x);
      my = std::min(my, p.y);
      mz = std::min(mz, p.z);
    }
    std::vector<std::array<int, 4>> tuples;
    tuples.reserve(ps.size());
    for (const Placement& p : ps)
      tuples.push_back({p.z - mz, p.y - my, p.x - mx, static_cast<int>(p.orientation)});
    std::sort(tuples.begin(), tuples.end());
    std::ostringstream key;
    for (const auto& t : tuples) key << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ';';
    std::string s = key.str();
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

LegoGraph remove_node(const LegoGraph& g, int node) {
  LegoGraph out;
  out.class_label = g.class_label;
  for (int v = 0; v < g.node_count(); ++v)
    if (v != node) out.add_node(g.orientation(v));
  const auto remap = [node](int v) { return v < node ? v : v - 1; };
  for (const Edge& e : g.edges()) {
    if (e.src == node || e.dst == node) continue;
    out.add_edge(remap(e.src), remap(e.dst), e.label);
  }
  return out;
}

std::string to_ldraw(const LegoGraph& g, const std::vector<int>& colors,
                     std::uint64_t color_seed) {
  require_valid(g, "to_ldraw");
  static constexpr int kPalette[] = {1, 2, 4, 5, 14, 15, 25, 27, 0, 7};
  const ResolvedStructure r = resolve_placements(g);
  std::ostringstream out;
  std::uint64_t state = color_seed * 6364136223846793005ULL + 1442695040888963407ULL;
  for (int v = 0; v < g.node_count(); ++v) {
    const Placement& p = r.placements[static_cast<std::size_t>(v)];
    int color;
    if (!colors.empty()) {
      color = colors[static_cast<std::size_t>(v) % colors.size()];
    } else {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      color = kPalette[(state >> 33) % (sizeof(kPalette) / sizeof(kPalette[0]))];
    }
    const int X = 20 * p.x;
    const int Y = -24 * p.z;
    const int Z = 20 * p.y;
    out << "1 " << color << ' ' << X << ' ' << Y << ' ' << Z << ' ';
    if (p.orientation == Orientation::AlongX)
      out << "1 0 0 0 1 0 0 0 1";
    else
      out << "0 0 1 0 1 0 -1 0 0";
    out << " 3001.dat\n";
  }
  return out.str();
}

}  // namespace lego
