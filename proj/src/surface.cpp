#include "cobord2/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cobord2 {

bool Component::has_label(const std::string& c) const {
  return std::find(in.begin(), in.end(), c) != in.end() || std::find(out.begin(), out.end(), c) != out.end();
}

// Components never share labels, and each has at least one, so the first
// label orders them.
bool Component::operator<(const Component& o) const { return std::tie(in, out, handles) < std::tie(o.in, o.out, o.handles); }

void canonicalize(Component& c) {
  std::sort(c.handles.begin(), c.handles.end());
  std::sort(c.in.begin(), c.in.end());
  std::sort(c.out.begin(), c.out.end());
}

void canonicalize(Item& item) {
  for (auto& c : item) canonicalize(c);
  std::sort(item.begin(), item.end());
}

std::vector<std::string> in_labels(const Item& item) {
  std::vector<std::string> r;
  for (const auto& c : item) r.insert(r.end(), c.in.begin(), c.in.end());
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<std::string> out_labels(const Item& item) {
  std::vector<std::string> r;
  for (const auto& c : item) r.insert(r.end(), c.out.begin(), c.out.end());
  std::sort(r.begin(), r.end());
  return r;
}

int max_handle(const Item& item) {
  int m = 0;
  for (const auto& c : item) {
    for (int h : c.handles) m = std::max(m, h);
  }
  return m;
}

int find_component(const Item& item, const std::string& label) {
  for (std::size_t i = 0; i < item.size(); ++i) {
    if (item[i].has_label(label)) return static_cast<int>(i);
  }
  return -1;
}

std::optional<Item> glue(const Item& left, const Item& right, const std::set<std::string>& circles) {
  std::set<int> used;
  for (const auto& c : left) used.insert(c.handles.begin(), c.handles.end());
  int next = used.empty() ? 1 : *used.rbegin() + 1;

  std::vector<int> rhandles;
  for (const auto& c : right) rhandles.insert(rhandles.end(), c.handles.begin(), c.handles.end());
  std::sort(rhandles.begin(), rhandles.end());
  std::map<int, int> rename;
  for (int h : rhandles) {
    if (used.count(h)) rename[h] = next++;
  }
  for (int h : rhandles) used.insert(rename.count(h) ? rename[h] : h);
  if (!used.empty()) next = std::max(next, *used.rbegin() + 1);

  const std::size_t nl = left.size(), n = left.size() + right.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> edges(n, 0);
  for (const auto& c : circles) {
    std::size_t a = n, b = n;
    for (std::size_t i = 0; i < nl; ++i) {
      if (std::find(left[i].out.begin(), left[i].out.end(), c) != left[i].out.end()) a = i;
    }
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (std::find(right[j].in.begin(), right[j].in.end(), c) != right[j].in.end()) b = nl + j;
    }
    if (a == n || b == n) return std::nullopt;
    const auto ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    edges[a] += 1;  // counted once per circle, on the left end
  }

  std::map<std::size_t, Component> pieces;
  std::map<std::size_t, int> piece_edges, piece_nodes;
  for (std::size_t i = 0; i < n; ++i) {
    const Component& src = i < nl ? left[i] : right[i - nl];
    Component& dst = pieces[find(i)];
    for (int h : src.handles) dst.handles.push_back(i < nl ? h : (rename.count(h) ? rename[h] : h));
    for (const auto& l : src.in) {
      if (!circles.count(l)) dst.in.push_back(l);
    }
    for (const auto& l : src.out) {
      if (!circles.count(l)) dst.out.push_back(l);
    }
    piece_edges[find(i)] += edges[i];
    piece_nodes[find(i)] += 1;
  }
  Item result;
  for (auto& [root, comp] : pieces) {
    const int loops = piece_edges[root] - piece_nodes[root] + 1;
    for (int l = 0; l < loops; ++l) comp.handles.push_back(next++);
    if (comp.boundary_count() == 0) return std::nullopt;
    canonicalize(comp);
    result.push_back(std::move(comp));
  }
  canonicalize(result);
  return result;
}

int euler_characteristic(const Item& item) {
  int chi = 0;
  for (const auto& c : item) chi += 2 - 2 * c.genus() - c.boundary_count();
  return chi;
}

std::string to_string(const Component& c) {
  auto join_i = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  auto join_s = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  std::string s = "[";
  std::string sep;
  if (!c.handles.empty()) {
    s += "h=" + join_i(c.handles);
    sep = " ";
  }
  if (!c.in.empty()) {
    s += sep + "in=" + join_s(c.in);
    sep = " ";
  }
  if (!c.out.empty()) s += sep + "out=" + join_s(c.out);
  return s + "]";
}

std::string to_string(const Item& item) {
  std::string s;
  for (std::size_t i = 0; i < item.size(); ++i) s += (i ? " " : "") + to_string(item[i]);
  return s;
}

Item parse_item(const std::string& text) {
  Item item;
  std::size_t pos = 0;
  auto split = [](const std::string& v, char sep) {
    std::vector<std::string> r;
    std::stringstream ss(v);
    std::string x;
    while (std::getline(ss, x, sep)) {
      if (!x.empty()) r.push_back(x);
    }
    return r;
  };
  while (true) {
    pos = text.find_first_not_of(" \t", pos);
    if (pos == std::string::npos) break;
    if (text[pos] != '[') throw std::invalid_argument("item: expected '[' in '" + text + "'");
    const auto close = text.find(']', pos);
    if (close == std::string::npos) throw std::invalid_argument("item: missing ']' in '" + text + "'");
    Component c;
    std::istringstream fields(text.substr(pos + 1, close - pos - 1));
    std::string f;
    while (fields >> f) {
      const auto eq = f.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("item: bad field '" + f + "'");
      const std::string key = f.substr(0, eq);
      const auto values = split(f.substr(eq + 1), ',');
      if (key == "h") {
        for (const auto& v : values) {
          std::size_t used = 0;
          const int h = std::stoi(v, &used);
          if (used != v.size() || h < 1) throw std::invalid_argument("item: bad handle id '" + v + "'");
          c.handles.push_back(h);
        }
      } else if (key == "in") {
        c.in = values;
      } else if (key == "out") {
        c.out = values;
      } else {
        throw std::invalid_argument("item: unknown field '" + key + "'");
      }
    }
    canonicalize(c);
    item.push_back(std::move(c));
    pos = close + 1;
  }
  canonicalize(item);
  return item;
}

}  // namespace cobord2
