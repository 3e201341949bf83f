#include "pebble/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pebble {

void Instance::check() const {
  const NodeId n = tree.size();
  if (pebbles.size() != targets.size()) {
    throw std::invalid_argument(
        "pebble count " + std::to_string(pebbles.size()) +
        " differs from target count " + std::to_string(targets.size()));
  }
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("label table does not cover every node");
  }
  auto check_set = [n](const std::vector<NodeId>& nodes, const char* what) {
    std::vector<char> seen(n, 0);
    for (NodeId u : nodes) {
      if (u < 0 || u >= n) {
        throw std::invalid_argument(std::string(what) + " node " +
                                    std::to_string(u) + " out of range");
      }
      if (seen[u]) {
        throw std::invalid_argument(std::string("duplicate ") + what +
                                    " node " + std::to_string(u));
      }
      seen[u] = 1;
    }
  };
  check_set(pebbles, "pebble");
  check_set(targets, "target");
}

std::string Instance::name(NodeId u) const {
  if (labels.empty() || u < 0 || u >= static_cast<NodeId>(labels.size())) {
    return std::to_string(u);
  }
  return labels[u];
}

std::optional<NodeId> Instance::lookup(std::string_view name) const {
  if (labels.empty()) {
    NodeId value = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(),
                                     value);
    if (ec != std::errc() || ptr != name.data() + name.size() ||
        !tree.contains(value)) {
      return std::nullopt;
    }
    return value;
  }
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) return std::nullopt;
  return static_cast<NodeId>(it - labels.begin());
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ss(raw);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens.front().starts_with('#')) continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::optional<long long> as_integer(const std::string& tok) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::vector<Line> lines = significant_lines(in);
  if (lines.empty()) throw ParseError(0, "empty input");

  const Line& header = lines.front();
  if (header.tokens.size() != 2) {
    throw ParseError(header.number, "malformed header, expected 'n k'");
  }
  auto n_val = as_integer(header.tokens[0]);
  auto k_val = as_integer(header.tokens[1]);
  if (!n_val || !k_val || *n_val < 1 || *k_val < 0 || *k_val > *n_val ||
      *n_val > (1LL << 30)) {
    throw ParseError(header.number, "malformed header, expected 'n k' with "
                                    "n >= 1 and 0 <= k <= n");
  }
  const NodeId n = static_cast<NodeId>(*n_val);
  const NodeId k = static_cast<NodeId>(*k_val);

  const std::size_t body = lines.size() - 1;
  const std::size_t tail = k > 0 ? 2 : 0;
  if (body < tail) {
    throw ParseError(lines.back().number, "missing pebble or target line");
  }
  const std::size_t edge_lines = body - tail;
  if (edge_lines != static_cast<std::size_t>(n - 1)) {
    throw ParseError(header.number,
                     "expected " + std::to_string(n - 1) +
                         " edge lines (n-1), got " +
                         std::to_string(edge_lines));
  }
  for (std::size_t i = 1; i <= edge_lines; ++i) {
    if (lines[i].tokens.size() != 2) {
      throw ParseError(lines[i].number, "edge line must hold two nodes");
    }
  }
  for (std::size_t i = edge_lines + 1; i < lines.size(); ++i) {
    if (lines[i].tokens.size() != static_cast<std::size_t>(k)) {
      throw ParseError(lines[i].number,
                       "expected " + std::to_string(k) + " nodes, got " +
                           std::to_string(lines[i].tokens.size()));
    }
  }

  bool numeric = true;
  for (std::size_t i = 1; i < lines.size() && numeric; ++i) {
    for (const auto& tok : lines[i].tokens) {
      if (!as_integer(tok)) {
        numeric = false;
        break;
      }
    }
  }

  Instance inst;
  std::unordered_map<std::string, NodeId> ids;
  auto resolve = [&](const std::string& tok, std::size_t line) -> NodeId {
    if (numeric) {
      long long v = *as_integer(tok);
      if (v < 0 || v >= n) {
        throw ParseError(line, "node " + tok + " out of range [0, " +
                                   std::to_string(n) + ")");
      }
      return static_cast<NodeId>(v);
    }
    auto [it, inserted] =
        ids.emplace(tok, static_cast<NodeId>(inst.labels.size()));
    if (inserted) {
      if (static_cast<NodeId>(inst.labels.size()) == n) {
        throw ParseError(line, "more than " + std::to_string(n) +
                                   " distinct node labels");
      }
      inst.labels.push_back(tok);
    }
    return it->second;
  };

  std::vector<Edge> edges;
  edges.reserve(edge_lines);
  for (std::size_t i = 1; i <= edge_lines; ++i) {
    edges.push_back({resolve(lines[i].tokens[0], lines[i].number),
                     resolve(lines[i].tokens[1], lines[i].number)});
  }
  if (k > 0) {
    const Line& pl = lines[edge_lines + 1];
    const Line& tl = lines[edge_lines + 2];
    for (const auto& tok : pl.tokens) {
      inst.pebbles.push_back(resolve(tok, pl.number));
    }
    for (const auto& tok : tl.tokens) {
      inst.targets.push_back(resolve(tok, tl.number));
    }
  }
  if (!numeric && static_cast<NodeId>(inst.labels.size()) != n) {
    throw ParseError(header.number,
                     "declared " + std::to_string(n) + " nodes but found " +
                         std::to_string(inst.labels.size()) + " labels");
  }

  const std::size_t body_line = edge_lines > 0 ? lines[1].number
                                               : header.number;
  try {
    inst.tree = Tree(n, std::move(edges));
    inst.check();
  } catch (const std::invalid_argument& e) {
    throw ParseError(body_line, e.what());
  }
  return inst;
}

Instance parse_instance_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << inst.size() << ' ' << inst.k() << '\n';
  for (const Edge& e : inst.tree.edges()) {
    out << inst.name(e.u) << ' ' << inst.name(e.v) << '\n';
  }
  auto write_set = [&](const std::vector<NodeId>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i) out << ' ';
      out << inst.name(nodes[i]);
    }
    out << '\n';
  };
  if (inst.k() > 0) {
    write_set(inst.pebbles);
    write_set(inst.targets);
  }
}

Instance labeled_instance(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& pebbles,
    const std::vector<std::string>& targets) {
  Instance inst;
  std::unordered_map<std::string, NodeId> ids;
  auto id = [&](const std::string& label) {
    auto [it, inserted] =
        ids.emplace(label, static_cast<NodeId>(inst.labels.size()));
    if (inserted) inst.labels.push_back(label);
    return it->second;
  };
  std::vector<Edge> tree_edges;
  for (const auto& [a, b] : edges) tree_edges.push_back({id(a), id(b)});
  for (const auto& p : pebbles) inst.pebbles.push_back(id(p));
  for (const auto& t : targets) inst.targets.push_back(id(t));
  inst.tree = Tree(static_cast<NodeId>(inst.labels.size()),
                   std::move(tree_edges));
  inst.check();
  return inst;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(base);
  h = mix(h ^ a);
  h = mix(h ^ b);
  h = mix(h ^ c);
  return h;
}

std::vector<NodeId> sample_without_replacement(Rng& rng, NodeId n, NodeId k) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("sample size " + std::to_string(k) +
                                " outside [0, " + std::to_string(n) + "]");
  }
  std::vector<NodeId> pool(n);
  for (NodeId i = 0; i < n; ++i) pool[i] = i;
  for (NodeId i = 0; i < k; ++i) {
    auto j = i + static_cast<NodeId>(uniform_below(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

Tree random_labeled_tree(NodeId n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("tree size must be positive");
  if (n == 1) return Tree(1, {});
  if (n == 2) return Tree(2, {{0, 1}});
  std::vector<NodeId> sequence(n - 2);
  for (auto& x : sequence) x = static_cast<NodeId>(uniform_below(rng, n));
  return tree_from_prufer(sequence);
}

Tree random_labeled_tree(NodeId n, std::uint64_t seed) {
  Rng rng(seed);
  return random_labeled_tree(n, rng);
}

Instance random_instance(NodeId n, NodeId k, std::uint64_t seed,
                         TreeDistribution dist) {
  if (n < 1) throw std::invalid_argument("tree size must be positive");
  if (k < 0 || k > n) {
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " must lie in [0, n = " + std::to_string(n) +
                                "]");
  }
  Rng rng(seed);
  Instance inst;
  inst.tree = dist == TreeDistribution::kUniform ? random_labeled_tree(n, rng)
                                                 : path_tree(n);
  inst.pebbles = sample_without_replacement(rng, n, k);
  inst.targets = sample_without_replacement(rng, n, k);
  std::sort(inst.pebbles.begin(), inst.pebbles.end());
  std::sort(inst.targets.begin(), inst.targets.end());
  return inst;
}

}  // namespace pebble
