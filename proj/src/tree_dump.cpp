#include "treesearch/tree_dump.hpp"

#include <cstdio>

namespace treesearch {

std::string format_g6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

void append_state(std::string& out, const State& s) {
  out += '[';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += format_g6(s[i]);
  }
  out += ']';
}

void dump_node(std::string& out, const Node& node) {
  out += "node depth=";
  out += std::to_string(node.depth);
  out += " state=";
  append_state(out, node.state);
  out += " sigma=";
  out += format_g6(node.sigma);
  out += " flags=";
  out += node.terminal ? 'T' : (node.looped ? 'L' : '-');
  if (node.terminal || node.looped) {
    out += " leaf_value=";
    out += format_g6(node.leaf_value);
    out += '\n';
    return;
  }
  out += " edges=[";
  for (std::size_t a = 0; a < node.edges.size(); ++a) {
    const Edge& e = node.edges[a];
    if (a) out += " | ";
    out += 'a';
    out += std::to_string(a);
    out += " n=";
    out += std::to_string(e.n);
    out += " w=";
    out += format_g6(e.w);
    out += " q=";
    out += format_g6(e.q);
    out += " b=";
    out += std::to_string(e.b);
    out += " r=";
    out += format_g6(e.reward);
  }
  out += "]\n";
  for (const Edge& e : node.edges)
    if (e.child) dump_node(out, *e.child);
}

}  // namespace

std::string dump_tree(const Node& root) {
  std::string out;
  dump_node(out, root);
  return out;
}

}  // namespace treesearch
