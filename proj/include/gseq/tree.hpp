#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gseq/fibzeck.hpp"

namespace gseq {

// Address of a vertex: height h from the root and position idx within the
// level, counted 1-based from the right. A level holds F_{h+2} vertices and
// labels grow right to left, so label = F_{h+3} - 2 + idx.
struct TreeCoord {
  std::uint32_t height = 0;
  std::uint64_t idx = 1;

  bool operator==(const TreeCoord&) const = default;
};

/// Vertices at height h: F_{h+2}.
inline std::uint64_t level_size(std::uint32_t h) { return fib(std::uint64_t{h} + 2); }

/// Vertices at heights 0 through h: F_{h+4} - 2.
inline std::uint64_t cumulative_size(std::uint32_t h) { return fib(std::uint64_t{h} + 4) - 2; }

namespace detail {

inline void require_coord(const TreeCoord& c) {
  if (c.idx < 1 || c.idx > level_size(c.height))
    throw std::invalid_argument("tree: idx " + std::to_string(c.idx) + " outside level " +
                                std::to_string(c.height) + " (size " +
                                std::to_string(level_size(c.height)) + ")");
}

}  // namespace detail

inline std::uint64_t coord_to_label(const TreeCoord& c) {
  detail::require_coord(c);
  // vertices strictly below height h: F_{h+3} - 2
  return detail::checked_add(fib(std::uint64_t{c.height} + 3) - 2, c.idx, "coord_to_label");
}

inline TreeCoord label_to_coord(std::uint64_t label) {
  if (label < 1) throw std::invalid_argument("label_to_coord: labels start at 1");
  // Smallest h with label <= F_{h+4} - 2. Every 64-bit label fits by height 90.
  std::uint32_t h = 0;
  while (std::uint64_t{h} + 4 <= fib_max_index &&
         label > detail::fib_table[std::size_t{h} + 4] - 2)
    ++h;
  return {h, label - (detail::fib_table[std::size_t{h} + 3] - 2)};
}

/// Parent of a vertex, by recursive descent into the two copies of the tree.
///
/// Within level h (h >= 3) the rightmost F_h positions come from the copy
/// hanging under vertex 2, where they sit at height h-2; the remaining
/// F_{h+1} positions come from the left-subtree copy at height h-1. A coord
/// (h', i') of the right copy embeds as (h'+2, i'); one of the left copy
/// embeds as (h'+1, i' + F_{h'+1}). Heights 1 and 2 are the base cases read
/// off the definition.
inline TreeCoord parent_coord(const TreeCoord& c) {
  detail::require_coord(c);
  if (c.height == 0) throw std::domain_error("parent_coord: the root has no parent");
  if (c.height == 1) return {0, 1};
  if (c.height == 2) return c.idx == 1 ? TreeCoord{1, 1} : TreeCoord{1, 2};
  const std::uint64_t right_block = detail::fib_table[c.height];  // F_h
  if (c.idx <= right_block) {
    const TreeCoord q = parent_coord({c.height - 2, c.idx});
    return {q.height + 2, q.idx};
  }
  const TreeCoord q = parent_coord({c.height - 1, c.idx - right_block});
  return {q.height + 1, q.idx + detail::fib_table[std::size_t{q.height} + 1]};
}

/// Label of the parent of the given vertex. parent_label(n + 1) equals G(n).
inline std::uint64_t parent_label(std::uint64_t label) {
  if (label < 2)
    throw std::domain_error("parent_label: vertex " + std::to_string(label) + " has no parent");
  return coord_to_label(parent_coord(label_to_coord(label)));
}

/// Number of children of a vertex of the infinite tree (always 1 or 2),
/// by the same recursive descent; no scanning. Equals the frequency f(label)
/// once that value's preimage is complete.
inline int children_count(const TreeCoord& c) {
  detail::require_coord(c);
  if (c.height == 0) return 2;                 // root: right child plus left copy
  if (c.height == 1) return c.idx == 1 ? 1 : 2;  // vertex 2 carries a single subtree
  const std::uint64_t right_block = detail::fib_table[c.height];
  if (c.idx <= right_block) return children_count({c.height - 2, c.idx});
  return children_count({c.height - 1, c.idx - right_block});
}

inline int children_count(std::uint64_t label) { return children_count(label_to_coord(label)); }

inline constexpr std::uint32_t explicit_tree_max_height = 25;

/// Materialized prefix of the tree: all vertices through max_height with
/// parent and children adjacency. Built from the recursive definition
/// directly, independent of the coordinate algebra, so the two can be
/// checked against each other.
class ExplicitTree {
 public:
  explicit ExplicitTree(std::uint32_t max_height) : max_height_(max_height) {
    if (max_height > explicit_tree_max_height)
      throw std::range_error("ExplicitTree: height " + std::to_string(max_height) +
                             " exceeds the materialization cap " +
                             std::to_string(explicit_tree_max_height));
    build();
  }

  std::uint32_t max_height() const noexcept { return max_height_; }
  std::uint64_t vertex_count() const noexcept { return parent_.size() - 1; }

  /// 0 for the root.
  std::uint64_t parent_of(std::uint64_t label) const { return parent_.at(checked(label)); }

  /// Children in increasing label order (right to left in the drawing).
  std::span<const std::uint64_t> children_of(std::uint64_t label) const {
    const auto& ch = children_.at(checked(label));
    return {ch.data(), ch.size()};
  }

  std::uint32_t height_of(std::uint64_t label) const { return height_.at(checked(label)); }

  /// Labels at one height, ascending.
  std::span<const std::uint64_t> level(std::uint32_t h) const {
    if (h > max_height_) throw std::out_of_range("ExplicitTree::level");
    return {levels_[h].data(), levels_[h].size()};
  }

 private:
  std::size_t checked(std::uint64_t label) const {
    if (label < 1 || label > vertex_count())
      throw std::out_of_range("ExplicitTree: label " + std::to_string(label) +
                              " not materialized");
    return static_cast<std::size_t>(label);
  }

  // Breadth-first unfolding of the definition. Two vertex kinds: a copy root
  // ("g", children: right vertex then its own left copy root) and a right
  // vertex ("r", one child: the root of the copy it carries). Children are
  // enqueued right to left, which is exactly increasing label order.
  void build() {
    struct Pending {
      std::uint64_t parent;
      std::uint32_t height;
      std::uint32_t budget;  // remaining heights below this vertex
      bool is_right_vertex;
    };
    const std::uint64_t total = cumulative_size(max_height_);
    parent_.assign(static_cast<std::size_t>(total) + 1, 0);
    children_.assign(static_cast<std::size_t>(total) + 1, {});
    height_.assign(static_cast<std::size_t>(total) + 1, 0);
    levels_.assign(max_height_ + 1, {});

    std::vector<Pending> queue;
    queue.reserve(static_cast<std::size_t>(total));
    queue.push_back({0, 0, max_height_, false});
    std::uint64_t next_label = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Pending cur = queue[head];
      const std::uint64_t label = ++next_label;
      parent_[static_cast<std::size_t>(label)] = cur.parent;
      height_[static_cast<std::size_t>(label)] = cur.height;
      levels_[cur.height].push_back(label);
      if (cur.parent != 0) children_[static_cast<std::size_t>(cur.parent)].push_back(label);
      if (cur.budget == 0) continue;
      if (cur.is_right_vertex) {
        queue.push_back({label, cur.height + 1, cur.budget - 1, false});
      } else {
        queue.push_back({label, cur.height + 1, cur.budget - 1, true});
        queue.push_back({label, cur.height + 1, cur.budget - 1, false});
      }
    }
    if (next_label != total)
      throw std::logic_error("ExplicitTree: built " + std::to_string(next_label) +
                             " vertices, expected " + std::to_string(total));
  }

  std::uint32_t max_height_;
  std::vector<std::uint64_t> parent_;
  std::vector<std::vector<std::uint64_t>> children_;
  std::vector<std::uint32_t> height_;
  std::vector<std::vector<std::uint64_t>> levels_;
};

inline ExplicitTree build_explicit(std::uint32_t max_height) { return ExplicitTree(max_height); }

inline constexpr std::uint32_t ascii_render_max_height = 8;

/// Deterministic ASCII drawing: one row of labels per height with an edge
/// row between heights; within a row labels run left to right in decreasing
/// order, the right child of each copy root drawn rightmost.
inline std::string render_ascii(const ExplicitTree& tree) {
  if (tree.max_height() > ascii_render_max_height)
    throw std::range_error("render_ascii: height " + std::to_string(tree.max_height()) +
                           " exceeds the readability cap " +
                           std::to_string(ascii_render_max_height));

  const std::uint64_t n = tree.vertex_count();
  std::vector<std::uint64_t> start(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint64_t> center(static_cast<std::size_t>(n) + 1, 0);

  // Subtree spans, children left to right = decreasing label.
  auto width = [&](auto&& self, std::uint64_t label) -> std::uint64_t {
    const std::uint64_t own = std::to_string(label).size();
    const auto ch = tree.children_of(label);
    if (ch.empty()) return own;
    std::uint64_t sum = 0;
    for (std::size_t i = ch.size(); i-- > 0;) sum += self(self, ch[i]) + 2;
    sum -= 2;
    return sum > own ? sum : own;
  };
  auto place = [&](auto&& self, std::uint64_t label, std::uint64_t left) -> void {
    const std::uint64_t own = std::to_string(label).size();
    const auto ch = tree.children_of(label);
    if (ch.empty()) {
      start[label] = left;
      center[label] = left + (own - 1) / 2;
      return;
    }
    std::uint64_t cursor = left;
    for (std::size_t i = ch.size(); i-- > 0;) {
      self(self, ch[i], cursor);
      cursor += width(width, ch[i]) + 2;
    }
    const std::uint64_t lo = center[ch.back()];   // leftmost child center
    const std::uint64_t hi = center[ch.front()];  // rightmost child center
    const std::uint64_t mid = (lo + hi) / 2;
    start[label] = mid >= (own - 1) / 2 ? mid - (own - 1) / 2 : 0;
    if (start[label] < left) start[label] = left;
    center[label] = start[label] + (own - 1) / 2;
  };
  place(place, 1, 0);

  std::vector<std::string> rows(2 * static_cast<std::size_t>(tree.max_height()) + 1);
  auto put = [&](std::string& row, std::uint64_t col, const std::string& text) {
    if (row.size() < col + text.size()) row.resize(col + text.size(), ' ');
    for (std::size_t i = 0; i < text.size(); ++i) row[static_cast<std::size_t>(col) + i] = text[i];
  };
  for (std::uint64_t label = 1; label <= n; ++label) {
    const std::uint32_t h = tree.height_of(label);
    put(rows[2 * std::size_t{h}], start[label], std::to_string(label));
    if (label == 1) continue;
    const std::uint64_t pc = center[tree.parent_of(label)];
    const std::uint64_t cc = center[label];
    std::string& edge_row = rows[2 * std::size_t{h} - 1];
    if (cc == pc)
      put(edge_row, pc, "|");
    else if (cc < pc)
      put(edge_row, (cc + pc) / 2, "/");
    else
      put(edge_row, (cc + pc + 1) / 2, "\\");
  }

  std::string out;
  for (auto& row : rows) {
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row;
    out += '\n';
  }
  return out;
}

/// DOT export, one `parent -> child;` line per edge, children in label order.
inline std::string to_dot(const ExplicitTree& tree) {
  std::string out = "digraph G {\n";
  for (std::uint64_t label = 2; label <= tree.vertex_count(); ++label) {
    out += "  " + std::to_string(tree.parent_of(label)) + " -> " + std::to_string(label) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace gseq
