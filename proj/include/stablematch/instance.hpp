#pragma once

// Bipartite preference instances and matchings.
//
// Vertices are indexed I-side first (in declaration order), then J-side.
// Edges are indexed in lexicographic byte order of their ids, so sorting a
// set of edge indices yields the canonical output order.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablematch/errors.hpp"

namespace stablematch {

using VertexIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

enum class Side : std::uint8_t { I, J };

inline Side opposite(Side s) { return s == Side::I ? Side::J : Side::I; }

struct EdgeSpec {
  std::string id;
  std::string i_vertex;
  std::string j_vertex;
};

using PreferenceMap = std::map<std::string, std::vector<std::string>, std::less<>>;

class PreferenceInstance {
 public:
  PreferenceInstance() = default;

  /// Builds and validates an instance. `prefs` lists, best first, the edge ids
  /// at every vertex of positive degree; isolated vertices may be omitted.
  PreferenceInstance(std::vector<std::string> side_i, std::vector<std::string> side_j,
                     std::vector<EdgeSpec> edges, const PreferenceMap& prefs) {
    num_i_ = side_i.size();
    vertex_ids_ = std::move(side_i);
    vertex_ids_.insert(vertex_ids_.end(), std::make_move_iterator(side_j.begin()),
                       std::make_move_iterator(side_j.end()));
    for (VertexIndex v = 0; v < vertex_ids_.size(); ++v) {
      if (vertex_ids_[v].empty()) throw_validation("empty vertex id");
      if (!vertex_index_.emplace(vertex_ids_[v], v).second)
        throw_validation("duplicate vertex id '" + vertex_ids_[v] + "'");
    }

    std::sort(edges.begin(), edges.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    ends_.reserve(edges.size());
    std::set<std::pair<VertexIndex, VertexIndex>> pairs;
    for (EdgeIndex e = 0; e < edges.size(); ++e) {
      const EdgeSpec& spec = edges[e];
      if (spec.id.empty()) throw_validation("empty edge id");
      if (e > 0 && edges[e - 1].id == spec.id)
        throw_validation("duplicate edge id '" + spec.id + "'");
      const VertexIndex m = vertex(spec.i_vertex);
      const VertexIndex w = vertex(spec.j_vertex);
      if (side(m) != Side::I || side(w) != Side::J)
        throw_validation("edge '" + spec.id + "' must join an I-vertex to a J-vertex");
      if (!pairs.emplace(m, w).second)
        throw_validation("parallel edge '" + spec.id + "' between '" + spec.i_vertex +
                         "' and '" + spec.j_vertex + "'");
      edge_ids_.push_back(spec.id);
      edge_index_.emplace(spec.id, e);
      ends_.push_back({m, w});
    }

    std::vector<std::vector<EdgeIndex>> incident(vertex_ids_.size());
    for (EdgeIndex e = 0; e < ends_.size(); ++e) {
      incident[ends_[e][0]].push_back(e);
      incident[ends_[e][1]].push_back(e);
    }
    for (const auto& [vid, list] : prefs) {
      if (!find_vertex(vid)) throw_validation("preference list for unknown vertex '" + vid + "'");
    }

    pref_offset_.assign(vertex_ids_.size() + 1, 0);
    ranks_.assign(ends_.size(), {0, 0});
    for (VertexIndex v = 0; v < vertex_ids_.size(); ++v) {
      pref_offset_[v] = static_cast<std::uint32_t>(pref_edges_.size());
      const auto it = prefs.find(vertex_ids_[v]);
      if (it == prefs.end()) {
        if (!incident[v].empty())
          throw_validation("missing preference list for vertex '" + vertex_ids_[v] + "'");
        continue;
      }
      std::vector<EdgeIndex> order;
      for (const std::string& eid : it->second) order.push_back(edge(eid));
      std::vector<EdgeIndex> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != incident[v])
        throw_validation("preference list of '" + vertex_ids_[v] +
                         "' is not a permutation of its incident edges");
      const std::size_t s = v < num_i_ ? 0 : 1;
      for (std::uint32_t r = 0; r < order.size(); ++r) ranks_[order[r]][s] = r + 1;
      pref_edges_.insert(pref_edges_.end(), order.begin(), order.end());
    }
    pref_offset_[vertex_ids_.size()] = static_cast<std::uint32_t>(pref_edges_.size());
  }

  std::size_t num_vertices() const { return vertex_ids_.size(); }
  std::size_t num_edges() const { return edge_ids_.size(); }
  std::size_t num_i() const { return num_i_; }
  std::size_t num_j() const { return vertex_ids_.size() - num_i_; }

  Side side(VertexIndex v) const { return v < num_i_ ? Side::I : Side::J; }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(EdgeIndex e) const { return edge_ids_.at(e); }

  std::optional<VertexIndex> find_vertex(std::string_view id) const {
    const auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeIndex> find_edge(std::string_view id) const {
    const auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  VertexIndex vertex(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw_validation("unknown vertex '" + std::string(id) + "'");
  }
  EdgeIndex edge(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw_validation("unknown edge '" + std::string(id) + "'");
  }

  VertexIndex i_end(EdgeIndex e) const { return ends_.at(e)[0]; }
  VertexIndex j_end(EdgeIndex e) const { return ends_.at(e)[1]; }
  VertexIndex end(EdgeIndex e, Side s) const { return s == Side::I ? i_end(e) : j_end(e); }
  VertexIndex other_end(EdgeIndex e, VertexIndex v) const {
    return i_end(e) == v ? j_end(e) : i_end(e);
  }

  /// Edges incident to v, best first.
  std::span<const EdgeIndex> prefs(VertexIndex v) const {
    return {pref_edges_.data() + pref_offset_.at(v),
            pref_edges_.data() + pref_offset_.at(v + 1)};
  }
  std::size_t degree(VertexIndex v) const { return prefs(v).size(); }

  /// 1-based position of e in the preference list of its endpoint on side s.
  std::uint32_t rank(EdgeIndex e, Side s) const { return ranks_.at(e)[s == Side::I ? 0 : 1]; }
  std::uint32_t rank_at(EdgeIndex e, VertexIndex v) const { return rank(e, side(v)); }

  /// True iff v strictly prefers e to f (both incident to v).
  bool prefers(VertexIndex v, EdgeIndex e, EdgeIndex f) const {
    return rank_at(e, v) < rank_at(f, v);
  }

  std::vector<VertexIndex> vertices(Side s) const {
    std::vector<VertexIndex> out;
    const VertexIndex lo = s == Side::I ? 0 : static_cast<VertexIndex>(num_i_);
    const VertexIndex hi = s == Side::I ? static_cast<VertexIndex>(num_i_)
                                        : static_cast<VertexIndex>(vertex_ids_.size());
    for (VertexIndex v = lo; v < hi; ++v) out.push_back(v);
    return out;
  }

  /// Vertices of side s sorted by id.
  std::vector<VertexIndex> canonical_vertices(Side s) const {
    auto out = vertices(s);
    std::sort(out.begin(), out.end(),
              [&](VertexIndex a, VertexIndex b) { return vertex_ids_[a] < vertex_ids_[b]; });
    return out;
  }

  friend bool operator==(const PreferenceInstance& a, const PreferenceInstance& b) {
    return a.num_i_ == b.num_i_ && a.vertex_ids_ == b.vertex_ids_ && a.edge_ids_ == b.edge_ids_ &&
           a.ends_ == b.ends_ && a.pref_edges_ == b.pref_edges_ &&
           a.pref_offset_ == b.pref_offset_;
  }

 private:
  std::size_t num_i_ = 0;
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::map<std::string, VertexIndex, std::less<>> vertex_index_;
  std::map<std::string, EdgeIndex, std::less<>> edge_index_;
  std::vector<std::array<VertexIndex, 2>> ends_;
  std::vector<std::array<std::uint32_t, 2>> ranks_;
  std::vector<EdgeIndex> pref_edges_;
  std::vector<std::uint32_t> pref_offset_{0};
};

/// A set of edges, kept sorted by index.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<EdgeIndex> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  std::span<const EdgeIndex> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(EdgeIndex e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<EdgeIndex> edges_;
};

/// Per-vertex matched edge (kNone when uncovered). Throws if M is not a
/// matching of inst.
inline std::vector<EdgeIndex> mate_edges(const PreferenceInstance& inst, const Matching& m) {
  std::vector<EdgeIndex> mate(inst.num_vertices(), kNone);
  for (EdgeIndex e : m) {
    if (e >= inst.num_edges()) throw_validation("edge index out of range");
    for (VertexIndex v : {inst.i_end(e), inst.j_end(e)}) {
      if (mate[v] != kNone)
        throw_validation("not a matching: edges '" + inst.edge_id(mate[v]) + "' and '" +
                         inst.edge_id(e) + "' share vertex '" + inst.vertex_id(v) + "'");
      mate[v] = e;
    }
  }
  return mate;
}

inline void validate_matching(const PreferenceInstance& inst, const Matching& m) {
  (void)mate_edges(inst, m);
}

inline Matching matching_from_ids(const PreferenceInstance& inst,
                                  std::span<const std::string> ids) {
  std::vector<EdgeIndex> edges;
  for (const auto& id : ids) edges.push_back(inst.edge(id));
  Matching m(std::move(edges));
  validate_matching(inst, m);
  return m;
}

inline Matching matching_from_ids(const PreferenceInstance& inst,
                                  std::initializer_list<std::string_view> ids) {
  std::vector<std::string> v(ids.begin(), ids.end());
  return matching_from_ids(inst, std::span<const std::string>(v));
}

/// Space-separated edge ids in canonical order.
inline std::string format_edges(const PreferenceInstance& inst, std::span<const EdgeIndex> edges) {
  std::vector<EdgeIndex> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (EdgeIndex e : sorted) {
    if (!out.empty()) out += ' ';
    out += inst.edge_id(e);
  }
  return out;
}

/// Space-separated edge ids in the given order.
inline std::string format_sequence(const PreferenceInstance& inst, std::span<const EdgeIndex> edges) {
  std::string out;
  for (EdgeIndex e : edges) {
    if (!out.empty()) out += ' ';
    out += inst.edge_id(e);
  }
  return out;
}

inline std::string format_edges(const PreferenceInstance& inst, const Matching& m) {
  return format_edges(inst, m.edges());
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Splits a document into (1-based line number, tokens) pairs, dropping
/// comments and blank lines.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize_lines(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (!tokens.empty()) out.emplace_back(lineno, std::move(tokens));
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return out;
}

}  // namespace detail

/// Parses the line-based instance format:
///   side I <id>...   side J <id>...   edge <id> <I-vertex> <J-vertex>
///   pref <vertex> <edge>...   (best first)
inline PreferenceInstance parse_instance(std::string_view text) {
  std::optional<std::vector<std::string>> side_i, side_j;
  std::vector<EdgeSpec> edges;
  PreferenceMap prefs;
  std::set<std::string, std::less<>> edge_seen;

  for (auto& [lineno, tok] : detail::tokenize_lines(text)) {
    const std::string& kw = tok[0];
    if (kw == "side") {
      if (tok.size() < 2 || (tok[1] != "I" && tok[1] != "J"))
        throw_parse(lineno, "expected 'side I ...' or 'side J ...'");
      auto& slot = tok[1] == "I" ? side_i : side_j;
      if (slot) throw_parse(lineno, "duplicate 'side " + tok[1] + "' line");
      slot.emplace(tok.begin() + 2, tok.end());
    } else if (kw == "edge") {
      if (tok.size() != 4) throw_parse(lineno, "expected 'edge <edge-id> <I-vertex> <J-vertex>'");
      if (!edge_seen.insert(tok[1]).second) throw_parse(lineno, "duplicate edge id '" + tok[1] + "'");
      edges.push_back({tok[1], tok[2], tok[3]});
    } else if (kw == "pref") {
      if (tok.size() < 2) throw_parse(lineno, "expected 'pref <vertex-id> <edge-id>...'");
      if (prefs.count(tok[1])) throw_parse(lineno, "duplicate preference list for '" + tok[1] + "'");
      prefs.emplace(tok[1], std::vector<std::string>(tok.begin() + 2, tok.end()));
    } else {
      throw_parse(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!side_i) throw Error(ErrorKind::Parse, "missing 'side I' line");
  if (!side_j) throw Error(ErrorKind::Parse, "missing 'side J' line");
  return PreferenceInstance(std::move(*side_i), std::move(*side_j), std::move(edges), prefs);
}

inline std::string serialize(const PreferenceInstance& inst) {
  std::ostringstream out;
  for (Side s : {Side::I, Side::J}) {
    out << "side " << (s == Side::I ? "I" : "J");
    for (VertexIndex v : inst.vertices(s)) out << ' ' << inst.vertex_id(v);
    out << '\n';
  }
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e)
    out << "edge " << inst.edge_id(e) << ' ' << inst.vertex_id(inst.i_end(e)) << ' '
        << inst.vertex_id(inst.j_end(e)) << '\n';
  for (VertexIndex v = 0; v < inst.num_vertices(); ++v) {
    if (inst.degree(v) == 0) continue;
    out << "pref " << inst.vertex_id(v);
    for (EdgeIndex e : inst.prefs(v)) out << ' ' << inst.edge_id(e);
    out << '\n';
  }
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading '" + path + "'");
  return buf.str();
}

inline PreferenceInstance load_instance(const std::string& path) {
  return parse_instance(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Elementary accessors

inline std::span<const EdgeIndex> incident_edges(const PreferenceInstance& inst, VertexIndex v) {
  if (v >= inst.num_vertices()) throw_validation("unknown vertex index");
  return inst.prefs(v);
}

/// gamma(e): e together with every edge sharing an endpoint with e that the
/// endpoint strictly prefers to e. Sorted by index.
inline std::vector<EdgeIndex> gamma_set(const PreferenceInstance& inst, EdgeIndex e) {
  if (e >= inst.num_edges()) throw_validation("unknown edge index");
  std::vector<EdgeIndex> out{e};
  for (VertexIndex v : {inst.i_end(e), inst.j_end(e)}) {
    for (EdgeIndex f : inst.prefs(v)) {
      if (f == e) break;
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Induced instance on the surviving vertices; preference orders are
/// restricted with their relative order preserved.
inline PreferenceInstance remove_vertices(const PreferenceInstance& inst,
                                          std::span<const VertexIndex> drop) {
  std::vector<bool> gone(inst.num_vertices(), false);
  for (VertexIndex v : drop) {
    if (v >= inst.num_vertices()) throw_validation("unknown vertex index");
    gone[v] = true;
  }
  std::vector<std::string> side_i, side_j;
  for (VertexIndex v = 0; v < inst.num_vertices(); ++v) {
    if (gone[v]) continue;
    (inst.side(v) == Side::I ? side_i : side_j).push_back(inst.vertex_id(v));
  }
  std::vector<EdgeSpec> edges;
  std::vector<bool> kept(inst.num_edges(), false);
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (gone[inst.i_end(e)] || gone[inst.j_end(e)]) continue;
    kept[e] = true;
    edges.push_back({inst.edge_id(e), inst.vertex_id(inst.i_end(e)), inst.vertex_id(inst.j_end(e))});
  }
  PreferenceMap prefs;
  for (VertexIndex v = 0; v < inst.num_vertices(); ++v) {
    if (gone[v]) continue;
    std::vector<std::string> list;
    for (EdgeIndex e : inst.prefs(v))
      if (kept[e]) list.push_back(inst.edge_id(e));
    if (!list.empty()) prefs.emplace(inst.vertex_id(v), std::move(list));
  }
  return PreferenceInstance(std::move(side_i), std::move(side_j), std::move(edges), prefs);
}

inline PreferenceInstance remove_vertices(const PreferenceInstance& inst,
                                          std::initializer_list<std::string_view> ids) {
  std::vector<VertexIndex> drop;
  for (auto id : ids) drop.push_back(inst.vertex(id));
  return remove_vertices(inst, drop);
}

}  // namespace stablematch
