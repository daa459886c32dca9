#include "cobord2/word.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cobord2 {

Word Word::parse(std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    Letter l;
    const auto caret = tok.find('^');
    if (caret == std::string::npos) {
      l.gen = tok;
    } else {
      l.gen = tok.substr(0, caret);
      const std::string e = tok.substr(caret + 1);
      if (e == "-1") l.exp = -1;
      else if (e == "1") l.exp = 1;
      else throw std::invalid_argument("word: unsupported exponent '" + e + "'");
    }
    if (l.gen.size() < 2 || std::string("abdg").find(l.gen[0]) == std::string::npos) {
      throw std::invalid_argument("word: bad generator '" + tok + "'");
    }
    w.letters.push_back(std::move(l));
  }
  return w;
}

std::string Word::str() const {
  std::string s;
  for (const auto& l : letters) {
    if (!s.empty()) s += ' ';
    s += l.gen;
    if (l.exp < 0) s += "^-1";
  }
  return s;
}

Word Word::inverse() const {
  Word r;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back({it->gen, -it->exp});
  return r;
}

Word free_reduce(const Word& w) {
  Word r;
  for (const auto& l : w.letters) {
    if (!r.letters.empty() && r.letters.back().gen == l.gen && r.letters.back().exp == -l.exp) {
      r.letters.pop_back();
    } else {
      r.letters.push_back(l);
    }
  }
  return r;
}

namespace {

Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  while (w.letters.size() >= 2 && w.letters.front().gen == w.letters.back().gen &&
         w.letters.front().exp == -w.letters.back().exp) {
    w.letters.erase(w.letters.begin());
    w.letters.pop_back();
  }
  return w;
}

Word least_rotation(const Word& w) {
  Word best = w;
  Word cur = w;
  for (std::size_t i = 1; i < w.letters.size(); ++i) {
    std::rotate(cur.letters.begin(), cur.letters.begin() + 1, cur.letters.end());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace

Word canonical_circle(const Word& w) {
  const Word r = cyclic_reduce(w);
  return std::min(least_rotation(r), least_rotation(r.inverse()));
}

std::vector<Word> canonical_circle_set(std::vector<Word> ws) {
  for (auto& w : ws) w = canonical_circle(w);
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

bool as_handle_curve(const Word& w, HandleCurve& out) {
  const Word r = free_reduce(w);
  if (r.letters.size() != 1) return false;
  const auto& g = r.letters.front().gen;
  if (g[0] != 'a' && g[0] != 'b') return false;
  try {
    out.handle = std::stoi(g.substr(1));
  } catch (const std::exception&) {
    return false;
  }
  out.is_a = g[0] == 'a';
  return true;
}

Word separating_word(const std::vector<int>& handles, const std::vector<std::string>& labels) {
  std::vector<int> hs = handles;
  std::sort(hs.begin(), hs.end());
  std::vector<std::string> ls = labels;
  std::sort(ls.begin(), ls.end());
  Word w;
  for (int h : hs) {
    const std::string a = "a" + std::to_string(h);
    const std::string b = "b" + std::to_string(h);
    w.letters.push_back({a, 1});
    w.letters.push_back({b, 1});
    w.letters.push_back({a, -1});
    w.letters.push_back({b, -1});
  }
  for (const auto& l : ls) w.letters.push_back({"d" + l, 1});
  return w;
}

bool as_separating(const Word& w, std::vector<int>& handles, std::vector<std::string>& labels) {
  handles.clear();
  labels.clear();
  std::set<std::string> seen;
  const auto& ls = w.letters;
  std::size_t i = 0;
  while (i < ls.size()) {
    if (ls[i].gen[0] == 'd' && ls[i].exp == 1) {
      const std::string lab = ls[i].gen.substr(1);
      if (!seen.insert("d" + lab).second) return false;
      labels.push_back(lab);
      ++i;
      continue;
    }
    if (i + 4 > ls.size() || ls[i].gen[0] != 'a') return false;
    const std::string h = ls[i].gen.substr(1);
    const Letter expect[4] = {{"a" + h, 1}, {"b" + h, 1}, {"a" + h, -1}, {"b" + h, -1}};
    for (int k = 0; k < 4; ++k) {
      if (!(ls[i + k] == expect[k])) return false;
    }
    if (!seen.insert("a" + h).second) return false;
    try {
      handles.push_back(std::stoi(h));
    } catch (const std::exception&) {
      return false;
    }
    i += 4;
  }
  return !handles.empty() || !labels.empty();
}

}  // namespace cobord2
