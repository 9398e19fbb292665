#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace lks {

using Vertex = int;

/// Sorted, duplicate-free sequence of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids) : ids_(ids) { normalize(); }

  /// Sorts and removes duplicates.
  static VertexSet from(std::vector<Vertex> ids) {
    VertexSet s;
    s.ids_ = std::move(ids);
    s.normalize();
    return s;
  }

  /// Full range [0, n).
  static VertexSet range(int n) {
    VertexSet s;
    s.ids_.resize(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) s.ids_[static_cast<std::size_t>(i)] = i;
    return s;
  }

  bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  Vertex front() const { return ids_.front(); }
  Vertex back() const { return ids_.back(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  const std::vector<Vertex>& ids() const noexcept { return ids_; }

  /// True when every id lies in [0, n).
  bool within(int n) const { return ids_.empty() || (ids_.front() >= 0 && ids_.back() < n); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  std::vector<Vertex> ids_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
std::size_t intersection_size(const VertexSet& a, const VertexSet& b);
bool disjoint(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

/// "[0, 3, 5]"
std::string to_string(const VertexSet& s);

}  // namespace lks
