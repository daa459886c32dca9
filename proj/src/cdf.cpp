#include "cobord2/cdf.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace cobord2::cdf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

CdfFile parse(const std::string& text) {
  CdfFile f;
  std::istringstream in(text);
  std::string raw, section;
  int n = 0;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++n;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line[0] == '@') {
      section = line;
      if (section != "@circles" && section != "@surfaces" && section != "@steps" && section != "@target" &&
          section != "@moves")
        throw ParseError(n, "unknown section '" + section + "'");
      if (!seen.insert(section).second) throw ParseError(n, "duplicate " + section);
      if (section == "@target") f.target.emplace();
      continue;
    }
    try {
      if (section == "@circles") {
        std::istringstream ls(line);
        CircleDecl c;
        std::string tok;
        ls >> c.label;
        if (ls >> tok) {
          if (tok != "+" && tok != "-") throw std::invalid_argument("orientation must be + or -");
          c.reversed = tok == "-";
          if (ls >> tok) c.param = std::stoi(tok);
          if (ls >> tok) throw std::invalid_argument("trailing '" + tok + "'");
        }
        f.circles.push_back(c);
      } else if (section == "@surfaces") {
        if (line.rfind("item", 0) != 0) throw std::invalid_argument("expected 'item [...]'");
        f.seq.source.push_back(parse_item(line.substr(4)));
      } else if (section == "@steps") {
        f.seq.steps.push_back(cob::parse_step(line));
      } else if (section == "@target") {
        f.target->push_back(cob::parse_step(line));
      } else if (section == "@moves") {
        f.moves.push_back(line);
      } else {
        throw std::invalid_argument("declaration outside a section");
      }
    } catch (const std::exception& e) {
      throw ParseError(n, e.what());
    }
  }
  n = std::max(n, 1);  // end-of-file errors point at the last line
  if (f.seq.source.empty()) throw ParseError(n, "no @surfaces items");
  const auto problems = cob::check_surface(f.seq.source);
  if (!problems.empty()) throw ParseError(n, "source surface: " + problems.front());
  if (!f.circles.empty()) {
    std::vector<std::string> declared;
    for (const auto& c : f.circles) declared.push_back(c.label);
    auto ends = cob::end_labels(f.seq.source);
    std::sort(declared.begin(), declared.end());
    std::sort(ends.begin(), ends.end());
    if (declared != ends) throw ParseError(n, "@circles does not match the end circles of the surface");
  }
  return f;
}

CdfFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string serialize(const CdfFile& f) {
  std::string out;
  if (!f.circles.empty()) {
    out += "@circles\n";
    for (const auto& c : f.circles) {
      out += c.label + (c.reversed ? " -" : " +") + " " + std::to_string(c.param) + "\n";
    }
  }
  out += "@surfaces\n";
  for (const auto& item : f.seq.source) out += "item " + to_string(item) + "\n";
  out += "@steps\n";
  for (const auto& s : f.seq.steps) out += cob::format_step(s) + "\n";
  if (f.target) {
    out += "@target\n";
    for (const auto& s : *f.target) out += cob::format_step(s) + "\n";
  }
  if (!f.moves.empty()) {
    out += "@moves\n";
    for (const auto& m : f.moves) out += m + "\n";
  }
  return out;
}

}  // namespace cobord2::cdf
