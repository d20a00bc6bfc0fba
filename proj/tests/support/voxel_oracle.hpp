#pragma once

// Brute-force geometry oracle for small graphs. Deliberately uses different
// mechanics than the library: union-find connectivity, fixed-point constraint
// scanning over the edge list, dense voxel occupancy with generation stamps,
// and cell-by-cell footprint comparison.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "lego/graph.hpp"

namespace lego::testsupport {

struct OracleVerdict {
  bool connected = false;
  bool resolvable = false;
  bool collision_free = false;
  bool offsets_connectable = false;
  bool valid = false;
  std::vector<Placement> placements;  // defined when resolvable
};

class VoxelLattice {
 public:
  VoxelLattice(int half_xy, int half_z)
      : half_xy_(half_xy),
        half_z_(half_z),
        nx_(2 * half_xy + 4),
        nz_(2 * half_z + 2),
        stamp_(static_cast<std::size_t>(nx_) * nx_ * nz_, 0) {}

  bool in_range(const Cell& c) const {
    return std::abs(c.x) <= half_xy_ && std::abs(c.y) <= half_xy_ && std::abs(c.z) <= half_z_;
  }

  // Returns false when the cell was already stamped with this generation.
  bool stamp(const Cell& c, int generation) {
    auto& s = stamp_[index(c)];
    if (s == generation) return false;
    s = generation;
    return true;
  }

 private:
  std::size_t index(const Cell& c) const {
    const std::size_t ix = static_cast<std::size_t>(c.x + half_xy_ + 1);
    const std::size_t iy = static_cast<std::size_t>(c.y + half_xy_ + 1);
    const std::size_t iz = static_cast<std::size_t>(c.z + half_z_ + 1);
    return (iz * static_cast<std::size_t>(nx_) + iy) * static_cast<std::size_t>(nx_) + ix;
  }

  int half_xy_;
  int half_z_;
  int nx_;
  int nz_;
  std::vector<int> stamp_;
};

inline std::vector<int> union_find_components(const LegoGraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.node_count()));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const Edge& e : g.edges()) {
    const int a = find(e.src), b = find(e.dst);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> comp(parent.size());
  for (int v = 0; v < g.node_count(); ++v) comp[static_cast<std::size_t>(v)] = find(v);
  return comp;
}

inline OracleVerdict voxel_oracle(const LegoGraph& g, VoxelLattice& lattice) {
  OracleVerdict out;
  const int n = g.node_count();
  if (n == 0) {
    out.connected = out.resolvable = out.collision_free = out.offsets_connectable = true;
    out.valid = true;
    return out;
  }

  const std::vector<int> comp = union_find_components(g);
  out.connected = std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });

  // Fixed-point scan: keep sweeping the edge list until nothing changes.
  out.placements.assign(static_cast<std::size_t>(n), Placement{});
  std::vector<bool> known(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v) {
    if (comp[static_cast<std::size_t>(v)] == v) {  // union-find root = lowest id
      known[static_cast<std::size_t>(v)] = true;
      out.placements[static_cast<std::size_t>(v)] = Placement{0, 0, 0, g.orientation(v)};
    } else {
      out.placements[static_cast<std::size_t>(v)].orientation = g.orientation(v);
    }
  }
  out.resolvable = true;
  bool progress = true;
  while (progress && out.resolvable) {
    progress = false;
    for (const Edge& e : g.edges()) {
      auto& ps = out.placements[static_cast<std::size_t>(e.src)];
      auto& pd = out.placements[static_cast<std::size_t>(e.dst)];
      const bool ks = known[static_cast<std::size_t>(e.src)];
      const bool kd = known[static_cast<std::size_t>(e.dst)];
      if (ks && kd) {
        if (pd.x != ps.x + e.label.dx || pd.y != ps.y + e.label.dy || pd.z != ps.z + 1) {
          out.resolvable = false;
          break;
        }
      } else if (ks) {
        pd.x = ps.x + e.label.dx;
        pd.y = ps.y + e.label.dy;
        pd.z = ps.z + 1;
        known[static_cast<std::size_t>(e.dst)] = true;
        progress = true;
      } else if (kd) {
        ps.x = pd.x - e.label.dx;
        ps.y = pd.y - e.label.dy;
        ps.z = pd.z - 1;
        known[static_cast<std::size_t>(e.src)] = true;
        progress = true;
      }
    }
  }

  out.offsets_connectable = true;
  for (const Edge& e : g.edges()) {
    // Cell-by-cell shared-column test at the label offset.
    const Placement a{0, 0, 0, g.orientation(e.src)};
    const Placement b{e.label.dx, e.label.dy, 0, g.orientation(e.dst)};
    bool share = false;
    for (const Cell& ca : brick_cells(a))
      for (const Cell& cb : brick_cells(b))
        if (ca.x == cb.x && ca.y == cb.y) share = true;
    if (!share) out.offsets_connectable = false;
  }

  if (out.resolvable) {
    out.collision_free = true;
    static int generation = 0;
    // One generation per component so cross-component overlap is ignored.
    std::vector<int> roots(comp);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (int root : roots) {
      ++generation;
      for (int v = 0; v < n; ++v) {
        if (comp[static_cast<std::size_t>(v)] != root) continue;
        for (const Cell& c : brick_cells(out.placements[static_cast<std::size_t>(v)])) {
          if (!lattice.in_range(c)) continue;  // generator keeps graphs in range
          if (!lattice.stamp(c, generation)) out.collision_free = false;
        }
      }
    }
  } else {
    out.collision_free = false;
  }

  out.valid =
      out.connected && out.resolvable && out.collision_free && out.offsets_connectable;
  return out;
}

// All support adjacencies absent from the explicit edge set, by pairwise
// cell-by-cell comparison of resolved footprints.
inline std::vector<Edge> oracle_implied_edges(const LegoGraph& g,
                                              const std::vector<Placement>& placements) {
  std::vector<Edge> out;
  for (int u = 0; u < g.node_count(); ++u) {
    for (int v = 0; v < g.node_count(); ++v) {
      if (u == v || g.has_edge(u, v)) continue;
      const Placement& pu = placements[static_cast<std::size_t>(u)];
      const Placement& pv = placements[static_cast<std::size_t>(v)];
      if (pv.z != pu.z + 1) continue;
      bool share = false;
      for (const Cell& ca : brick_cells(pu))
        for (const Cell& cb : brick_cells(pv))
          if (ca.x == cb.x && ca.y == cb.y) share = true;
      if (share) out.push_back(Edge{u, v, EdgeLabel{pv.x - pu.x, pv.y - pu.y}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lego::testsupport
