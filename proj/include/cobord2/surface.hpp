#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cobord2 {

/// A connected compact surface with boundary: handle ids (unique within the
/// surrounding item) and the labels of its incoming and outgoing circles.
struct Component {
  std::vector<int> handles;
  std::vector<std::string> in;
  std::vector<std::string> out;

  int genus() const { return static_cast<int>(handles.size()); }
  int boundary_count() const { return static_cast<int>(in.size() + out.size()); }
  bool has_label(const std::string& c) const;
  bool operator==(const Component&) const = default;
  bool operator<(const Component& o) const;
};

/// Components of one elementary surface, kept sorted.
using Item = std::vector<Component>;

/// Sorts handles, labels and components into canonical order.
void canonicalize(Component& c);
void canonicalize(Item& item);

std::vector<std::string> in_labels(const Item& item);
std::vector<std::string> out_labels(const Item& item);
int max_handle(const Item& item);

/// Index of the component carrying `label`, or -1.
int find_component(const Item& item, const std::string& label);

/// Glues `left` to `right` along `circles` (outgoing on the left, incoming on
/// the right). Handle ids of `right` that collide with ids of `left` are
/// renumbered upward in sorted order; every independent loop created by the
/// gluing becomes a fresh handle numbered after that. Returns nothing if a
/// closed component would result.
std::optional<Item> glue(const Item& left, const Item& right, const std::set<std::string>& circles);

/// Euler characteristic, sum of 2 - 2g - k.
int euler_characteristic(const Item& item);

std::string to_string(const Component& c);
std::string to_string(const Item& item);
/// Inverse of to_string; throws std::invalid_argument.
Item parse_item(const std::string& text);

}  // namespace cobord2
