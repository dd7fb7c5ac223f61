#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "posadisc/error.hpp"

namespace posadisc {

using Vertex = int;
using Rational = boost::rational<std::int64_t>;

/// Edge colour. Non-edges have no label at all.
enum class Sign : int { Minus = -1, Plus = 1 };

constexpr int value(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign negate(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

inline Sign sign_from_int(long long v) {
  require(v == 1 || v == -1, ErrorKind::InvalidArgument,
          "edge label must be -1 or 1, got " + std::to_string(v));
  return v == 1 ? Sign::Plus : Sign::Minus;
}

struct LabeledEdge {
  Vertex u;
  Vertex v;
  Sign label;

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Sorted duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids) : ids_(ids) { normalize(); }
  explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) { normalize(); }

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  const std::vector<Vertex>& ids() const noexcept { return ids_; }

  bool is_subset_of(const VertexSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    require(std::adjacent_find(ids_.begin(), ids_.end()) == ids_.end(),
            ErrorKind::InvalidArgument, "vertex set contains duplicates");
  }

  std::vector<Vertex> ids_;
};

/// Simple graph on 0..n-1 whose edges carry a label in {-1, +1}.
/// Immutable; build through GraphBuilder.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  int n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return test(adjacent_, u, v);
  }

  std::optional<Sign> label(Vertex u, Vertex v) const {
    if (!has_edge(u, v)) return std::nullopt;
    return test(positive_, u, v) ? Sign::Plus : Sign::Minus;
  }

  /// Label as +-1; the pair must be an edge.
  int sign(Vertex u, Vertex v) const {
    auto l = label(u, v);
    require(l.has_value(), ErrorKind::Containment,
            "pair {" + std::to_string(u) + "," + std::to_string(v) + "} is not an edge");
    return value(*l);
  }

  int degree(Vertex v) const {
    check_vertex(v);
    int d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(adjacent_[row(v) + w]);
    return d;
  }

  std::vector<Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u)
      if (test(adjacent_, v, u)) out.push_back(u);
    return out;
  }

  /// Raw adjacency words of v (bit u set iff uv is an edge).
  std::span<const std::uint64_t> adjacency_row(Vertex v) const {
    check_vertex(v);
    return {adjacent_.data() + row(v), words_};
  }
  std::span<const std::uint64_t> positive_row(Vertex v) const {
    check_vertex(v);
    return {positive_.data() + row(v), words_};
  }

  /// Edges with u < v in lexicographic order.
  std::vector<LabeledEdge> edges() const {
    std::vector<LabeledEdge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v)
        if (test(adjacent_, u, v))
          out.push_back({u, v, test(positive_, u, v) ? Sign::Plus : Sign::Minus});
    return out;
  }

  /// Same graph with every label flipped.
  ColoredGraph negated() const {
    ColoredGraph g = *this;
    for (std::size_t i = 0; i < g.positive_.size(); ++i)
      g.positive_[i] = g.adjacent_[i] & ~g.positive_[i];
    return g;
  }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
      fail(ErrorKind::OutOfRange, "vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
  }

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.n_ == b.n_ && a.adjacent_ == b.adjacent_ && a.positive_ == b.positive_;
  }

 private:
  friend class GraphBuilder;

  std::size_t row(Vertex v) const noexcept { return static_cast<std::size_t>(v) * words_; }
  bool test(const std::vector<std::uint64_t>& bits, Vertex u, Vertex v) const noexcept {
    return (bits[row(u) + static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
  }

  int n_ = 0;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> adjacent_;
  std::vector<std::uint64_t> positive_;
};

/// Mutable accumulator that validates every edge and freezes into a ColoredGraph.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n) {
    require(n >= 0, ErrorKind::InvalidArgument, "vertex count must be non-negative");
    g_.n_ = n;
    g_.words_ = (static_cast<std::size_t>(n) + 63) / 64;
    g_.adjacent_.assign(g_.words_ * static_cast<std::size_t>(n), 0);
    g_.positive_.assign(g_.words_ * static_cast<std::size_t>(n), 0);
  }

  explicit GraphBuilder(const ColoredGraph& g) : g_(g) {}

  int n() const noexcept { return g_.n_; }

  /// Adds uv with the given label. Re-adding with the same label is a no-op;
  /// a conflicting label or a self-loop is an error.
  GraphBuilder& add_edge(Vertex u, Vertex v, Sign label) {
    g_.check_vertex(u);
    g_.check_vertex(v);
    require(u != v, ErrorKind::InvalidArgument, "self-loop at vertex " + std::to_string(u));
    if (auto existing = g_.label(u, v)) {
      require(*existing == label, ErrorKind::InvalidArgument,
              "conflicting labels for edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
      return *this;
    }
    set(u, v, label);
    ++g_.edge_count_;
    return *this;
  }

  GraphBuilder& add_edge(Vertex u, Vertex v, int label) { return add_edge(u, v, sign_from_int(label)); }

  /// Overwrites the label of an existing edge or inserts it.
  GraphBuilder& set_edge(Vertex u, Vertex v, Sign label) {
    g_.check_vertex(u);
    g_.check_vertex(v);
    require(u != v, ErrorKind::InvalidArgument, "self-loop at vertex " + std::to_string(u));
    if (!g_.has_edge(u, v)) ++g_.edge_count_;
    set(u, v, label);
    return *this;
  }

  GraphBuilder& remove_edge(Vertex u, Vertex v) {
    g_.check_vertex(u);
    g_.check_vertex(v);
    if (!g_.has_edge(u, v)) return *this;
    clear_bit(g_.adjacent_, u, v);
    clear_bit(g_.adjacent_, v, u);
    clear_bit(g_.positive_, u, v);
    clear_bit(g_.positive_, v, u);
    --g_.edge_count_;
    return *this;
  }

  ColoredGraph build() const { return g_; }

 private:
  void set(Vertex u, Vertex v, Sign label) {
    set_bit(g_.adjacent_, u, v);
    set_bit(g_.adjacent_, v, u);
    if (label == Sign::Plus) {
      set_bit(g_.positive_, u, v);
      set_bit(g_.positive_, v, u);
    } else {
      clear_bit(g_.positive_, u, v);
      clear_bit(g_.positive_, v, u);
    }
  }
  void set_bit(std::vector<std::uint64_t>& bits, Vertex u, Vertex v) {
    bits[g_.row(u) + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
  }
  void clear_bit(std::vector<std::uint64_t>& bits, Vertex u, Vertex v) {
    bits[g_.row(u) + static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
  }

  ColoredGraph g_;
};

/// Graph from an explicit (u, v, label) list.
inline ColoredGraph make_graph(int n, std::initializer_list<std::tuple<Vertex, Vertex, int>> edges) {
  GraphBuilder b(n);
  for (const auto& [u, v, l] : edges) b.add_edge(u, v, l);
  return b.build();
}

/// K_n with every edge labelled `label`.
inline ColoredGraph complete_graph(int n, Sign label = Sign::Plus) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v, label);
  return b.build();
}

/// Complete multipartite graph with `parts` parts of `part_size` consecutive ids.
inline ColoredGraph complete_multipartite(int parts, int part_size, Sign label = Sign::Plus) {
  const int n = parts * part_size;
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (u / part_size != v / part_size) b.add_edge(u, v, label);
  return b.build();
}

inline int min_degree(const ColoredGraph& g) {
  if (g.n() == 0) return 0;
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.n(); ++v) best = std::min(best, g.degree(v));
  return best;
}

/// { x : xv is an edge for all v in s }; every vertex when s is empty.
inline VertexSet common_neighborhood(const ColoredGraph& g, const VertexSet& s) {
  for (Vertex v : s) g.check_vertex(v);
  std::vector<Vertex> out;
  for (Vertex x = 0; x < g.n(); ++x) {
    bool all = true;
    for (Vertex v : s) {
      if (x == v || !g.has_edge(x, v)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(x);
  }
  return VertexSet(std::move(out));
}

inline std::int64_t ceil_rational(const Rational& q) {
  std::int64_t num = q.numerator();
  std::int64_t den = q.denominator();  // always positive
  std::int64_t fl = num / den;
  if (num % den != 0 && num > 0) ++fl;
  return fl;
}

/// min_degree(g) >= ceil((1 - 1/(r+1) + eta) * n), in exact arithmetic.
inline bool check_degree_threshold(const ColoredGraph& g, int r, const Rational& eta) {
  require(r >= 1, ErrorKind::InvalidArgument, "r must be at least 1");
  require(eta >= Rational(0) && eta < Rational(1, r + 1), ErrorKind::InvalidArgument,
          "eta must lie in [0, 1/(r+1))");
  const Rational threshold = (Rational(1) - Rational(1, r + 1) + eta) * Rational(g.n());
  return min_degree(g) >= ceil_rational(threshold);
}

/// Parses "p/q", "p" or a finite decimal such as "0.05" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { fail(ErrorKind::Parse, "not a rational number: '" + text + "'"); };
  if (text.empty()) bad();
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      std::size_t used = 0;
      const long long num = std::stoll(text.substr(0, slash), &used);
      if (used != slash) bad();
      const std::string den_text = text.substr(slash + 1);
      const long long den = std::stoll(den_text, &used);
      if (used != den_text.size() || den == 0) bad();
      return Rational(num, den);
    }
    std::string digits = text;
    bool negative = false;
    if (digits.front() == '-' || digits.front() == '+') {
      negative = digits.front() == '-';
      digits.erase(0, 1);
    }
    std::int64_t den = 1;
    std::string whole = digits;
    std::string frac;
    if (auto dot = digits.find('.'); dot != std::string::npos) {
      whole = digits.substr(0, dot);
      frac = digits.substr(dot + 1);
    }
    if (whole.empty() && frac.empty()) bad();
    if (frac.size() > 15) bad();
    for (char c : whole + frac)
      if (c < '0' || c > '9') bad();
    std::int64_t num = whole.empty() ? 0 : std::stoll(whole);
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    return Rational(negative ? -num : num, den);
  } catch (const std::logic_error&) {
    bad();
  }
  return {};
}

}  // namespace posadisc
