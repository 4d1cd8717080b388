#include <charconv>
#include <string_view>
#include <unordered_map>

#include "dpgs/summary.hpp"

namespace dpgs {
namespace {

template <typename T>
T parse_number(std::string_view token, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'", line_no);
  }
  return value;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split into whitespace tokens; false at end of input.
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      tokens.clear();
      std::string_view rest(line_);
      std::size_t pos = 0;
      while (pos < rest.size()) {
        pos = rest.find_first_not_of(" \t\r", pos);
        if (pos == std::string_view::npos) break;
        std::size_t end = rest.find_first_of(" \t\r", pos);
        if (end == std::string_view::npos) end = rest.size();
        tokens.push_back(rest.substr(pos, end - pos));
        pos = end;
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t line_no_ = 0;
};

}  // namespace

void write_summary(std::ostream& out, const SummaryGraph& s,
                   std::span<const std::string> original_ids) {
  const SummaryGraph c = s.compacted();
  out << c.num_nodes() << ' ' << c.num_supernodes() << ' ' << c.num_superedges() << '\n';
  for (NodeId i = 0; i < c.num_nodes(); ++i) {
    if (original_ids.empty()) {
      out << i;
    } else {
      out << original_ids[i];
    }
    out << ' ' << c.assignment()[i] << '\n';
  }
  for (const Superedge& e : c.superedges()) {
    out << e.first << ' ' << e.second << ' ' << e.weight << '\n';
  }
}

SummaryGraph read_summary(std::istream& in, const Graph& g,
                          std::span<const std::string> original_ids) {
  LineReader reader(in);
  std::vector<std::string_view> tok;
  if (!reader.next(tok) || tok.size() != 3) {
    throw ParseError("missing `n n_s m_s` header", reader.line_no());
  }
  const auto n = parse_number<std::uint64_t>(tok[0], reader.line_no());
  const auto n_s = parse_number<std::uint64_t>(tok[1], reader.line_no());
  const auto m_s = parse_number<std::uint64_t>(tok[2], reader.line_no());
  if (n != g.num_nodes()) {
    throw ParseError("summary describes " + std::to_string(n) + " nodes but the graph has " +
                         std::to_string(g.num_nodes()),
                     reader.line_no());
  }

  std::unordered_map<std::string_view, NodeId> by_name;
  if (!original_ids.empty()) {
    for (NodeId i = 0; i < original_ids.size(); ++i) by_name.emplace(original_ids[i], i);
  }

  constexpr std::uint64_t kUnset = ~std::uint64_t{0};
  std::vector<std::uint64_t> labels(n, kUnset);
  for (std::uint64_t r = 0; r < n; ++r) {
    if (!reader.next(tok) || tok.size() != 2) {
      throw ParseError("expected `node supernode`", reader.line_no());
    }
    NodeId node;
    if (original_ids.empty()) {
      auto raw = parse_number<std::uint64_t>(tok[0], reader.line_no());
      if (raw >= n) throw ParseError("node id out of range", reader.line_no());
      node = static_cast<NodeId>(raw);
    } else {
      auto it = by_name.find(tok[0]);
      if (it == by_name.end()) {
        throw ParseError("unknown node '" + std::string(tok[0]) + "'", reader.line_no());
      }
      node = it->second;
    }
    if (labels[node] != kUnset) throw ParseError("node listed twice", reader.line_no());
    labels[node] = parse_number<std::uint64_t>(tok[1], reader.line_no());
  }

  SummaryGraph s = build_summary(g, NodeAssignment::from_labels(labels));
  if (s.num_supernodes() != n_s) {
    throw ParseError("header declares " + std::to_string(n_s) + " supernodes, node map has " +
                         std::to_string(s.num_supernodes()),
                     0);
  }
  if (s.num_superedges() != m_s) {
    throw ParseError("header declares " + std::to_string(m_s) +
                         " superedges, the graph aggregates to " +
                         std::to_string(s.num_superedges()),
                     0);
  }
  for (std::uint64_t r = 0; r < m_s; ++r) {
    if (!reader.next(tok) || tok.size() != 3) {
      throw ParseError("expected `k l weight`", reader.line_no());
    }
    const auto k = parse_number<std::uint64_t>(tok[0], reader.line_no());
    const auto l = parse_number<std::uint64_t>(tok[1], reader.line_no());
    const auto w = parse_number<std::uint64_t>(tok[2], reader.line_no());
    if (k >= n_s || l >= n_s) throw ParseError("supernode id out of range", reader.line_no());
    if (s.weight(static_cast<SuperId>(k), static_cast<SuperId>(l)) != w) {
      throw ParseError("superedge weight disagrees with the graph", reader.line_no());
    }
  }
  return s;
}

}  // namespace dpgs
