#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace minpath {

using Color = int;

/// Sorted, duplicate-free set of color ids. Small in practice (a handful of
/// colors per vertex), so a flat vector beats a tree.
class ColorSet {
 public:
  using const_iterator = std::vector<Color>::const_iterator;

  ColorSet() = default;
  ColorSet(std::initializer_list<Color> colors) : ids_(colors) { canonicalize(); }
  explicit ColorSet(std::vector<Color> colors) : ids_(std::move(colors)) { canonicalize(); }

  static ColorSet from_mask(std::uint64_t mask) {
    ColorSet out;
    for (Color c = 0; mask != 0; ++c, mask >>= 1) {
      if (mask & 1U) out.ids_.push_back(c);
    }
    return out;
  }

  static ColorSet range(int m) {
    ColorSet out;
    out.ids_.resize(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) out.ids_[static_cast<std::size_t>(c)] = c;
    return out;
  }

  bool empty() const noexcept { return ids_.empty(); }
  std::size_t size() const noexcept { return ids_.size(); }
  const_iterator begin() const noexcept { return ids_.begin(); }
  const_iterator end() const noexcept { return ids_.end(); }
  const std::vector<Color>& ids() const noexcept { return ids_; }
  Color operator[](std::size_t i) const { return ids_[i]; }

  bool contains(Color c) const { return std::binary_search(ids_.begin(), ids_.end(), c); }

  /// Position of `c` in sorted order, or -1.
  int index_of(Color c) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), c);
    if (it == ids_.end() || *it != c) return -1;
    return static_cast<int>(it - ids_.begin());
  }

  void insert(Color c) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), c);
    if (it == ids_.end() || *it != c) ids_.insert(it, c);
  }

  void erase(Color c) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), c);
    if (it != ids_.end() && *it == c) ids_.erase(it);
  }

  bool intersects(const ColorSet& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }

  bool is_subset_of(const ColorSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  ColorSet& operator|=(const ColorSet& other) {
    std::vector<Color> merged;
    merged.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(merged));
    ids_ = std::move(merged);
    return *this;
  }

  friend ColorSet operator|(ColorSet a, const ColorSet& b) { return a |= b; }

  friend ColorSet operator-(const ColorSet& a, const ColorSet& b) {
    ColorSet out;
    std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
  }

  friend ColorSet operator&(const ColorSet& a, const ColorSet& b) {
    ColorSet out;
    std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                          std::back_inserter(out.ids_));
    return out;
  }

  /// Bitmask form; only valid while every id is < 64.
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (Color c : ids_) m |= std::uint64_t{1} << c;
    return m;
  }

  double weight(std::span<const double> weights) const {
    double w = 0.0;
    for (Color c : ids_) w += weights[static_cast<std::size_t>(c)];
    return w;
  }

  friend bool operator==(const ColorSet&, const ColorSet&) = default;
  friend auto operator<=>(const ColorSet& a, const ColorSet& b) { return a.ids_ <=> b.ids_; }

 private:
  void canonicalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<Color> ids_;
};

}  // namespace minpath
