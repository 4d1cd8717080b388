#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "dpgs/graph.hpp"

namespace dpgs {
namespace {

bool is_gzip(std::string_view bytes) {
  return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
         static_cast<unsigned char>(bytes[1]) == 0x8b;
}

std::string gunzip(std::string_view compressed) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw ParseError("zlib init failed", 0);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());

  std::string out;
  char buffer[1 << 16];
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    status = inflate(&zs, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      inflateEnd(&zs);
      throw ParseError("corrupt gzip stream", 0);
    }
    out.append(buffer, sizeof(buffer) - zs.avail_out);
    if (status == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw ParseError("truncated gzip stream", 0);
    }
  }
  inflateEnd(&zs);
  return out;
}

// Splits on spaces, tabs and carriage returns; at most `max_tokens` returned.
std::size_t tokenize(std::string_view line, std::string_view* tokens, std::size_t max_tokens) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (count == max_tokens) return count + 1;
    tokens[count++] = line.substr(pos, end - pos);
    pos = end;
  }
  return count;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, IdDialect dialect) {
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (is_gzip(bytes)) bytes = gunzip(bytes);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> int_edges;
  std::vector<Edge> edges;
  std::unordered_map<std::string, NodeId> string_ids;
  std::vector<std::string> original_ids;

  std::string_view text(bytes);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::string_view tok[2];
    std::size_t count = tokenize(line, tok, 2);
    if (count == 0 || tok[0][0] == '#' || tok[0][0] == '%') continue;
    if (count != 2) throw ParseError("expected exactly two node ids", line_no);

    if (dialect == IdDialect::kInteger) {
      std::uint64_t ends[2];
      for (int e = 0; e < 2; ++e) {
        auto [ptr, ec] = std::from_chars(tok[e].data(), tok[e].data() + tok[e].size(), ends[e]);
        if (ec != std::errc() || ptr != tok[e].data() + tok[e].size()) {
          throw ParseError("non-numeric node id '" + std::string(tok[e]) + "'", line_no);
        }
      }
      int_edges.emplace_back(ends[0], ends[1]);
    } else {
      NodeId ends[2];
      for (int e = 0; e < 2; ++e) {
        auto [it, inserted] =
            string_ids.try_emplace(std::string(tok[e]), static_cast<NodeId>(original_ids.size()));
        if (inserted) original_ids.emplace_back(tok[e]);
        ends[e] = it->second;
      }
      edges.emplace_back(ends[0], ends[1]);
    }
  }

  if (dialect == IdDialect::kInteger) {
    std::vector<std::uint64_t> ids;
    ids.reserve(int_edges.size() * 2);
    for (const auto& [u, v] : int_edges) {
      ids.push_back(u);
      ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&ids](std::uint64_t x) {
      return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
    };
    edges.reserve(int_edges.size());
    for (const auto& [u, v] : int_edges) edges.emplace_back(dense(u), dense(v));
    original_ids.reserve(ids.size());
    for (std::uint64_t x : ids) original_ids.push_back(std::to_string(x));
  }

  if (original_ids.empty()) throw ParseError("edge list contains no edges", 0);

  LoadedGraph out;
  out.graph = Graph::from_edges(static_cast<NodeId>(original_ids.size()), edges, &out.cleanup);
  out.original_ids = std::move(original_ids);
  out.graph.check_invariants();
  return out;
}

LoadedGraph load_edge_list_file(const std::string& path, IdDialect dialect) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  return load_edge_list(in, dialect);
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> original_ids) {
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j : g.neighbors(i)) {
      if (i >= j) continue;
      if (original_ids.empty()) {
        out << i << '\t' << j << '\n';
      } else {
        out << original_ids[i] << '\t' << original_ids[j] << '\n';
      }
    }
  }
}

}  // namespace dpgs
