#include "permhash/ucycle.hpp"

#include <algorithm>
#include <set>

#include "permhash/errors.hpp"

namespace permhash {

namespace {

bool is_removed(std::span<const NodeId> removed, const NodeId& symbol) {
  return std::find(removed.begin(), removed.end(), symbol) != removed.end();
}

std::size_t factorial_small(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

CycleCheck verify_cycle(std::span<const NodeId> symbols, std::span<const NodeId> node_set) {
  const std::size_t n = node_set.size();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(node_set[i], i).second) {
      return {false, std::nullopt, "node set contains '" + node_set[i] + "' twice"};
    }
  }
  if (n == 0 || n > 20) return {false, std::nullopt, "node set size must be in [1, 20]"};
  const std::size_t expected = factorial_small(n);
  if (symbols.size() != expected) {
    return {false, std::nullopt,
            "length " + std::to_string(symbols.size()) + " != " + std::to_string(expected)};
  }
  std::vector<std::size_t> codes(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    auto it = index.find(symbols[i]);
    if (it == index.end()) return {false, i, "symbol '" + symbols[i] + "' not in node set"};
    codes[i] = it->second;
  }
  const std::size_t width = n - 1;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> window(width);
  for (std::size_t start = 0; start < codes.size(); ++start) {
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < width; ++j) {
      const std::size_t c = codes[(start + j) % codes.size()];
      if (used[c]) return {false, start, "window repeats a symbol"};
      used[c] = true;
      window[j] = c;
    }
    if (!seen.insert(window).second) return {false, start, "window already seen"};
  }
  return {};
}

std::vector<NodeId> build_cycle(std::span<const NodeId> node_set, std::uint64_t budget) {
  const std::size_t n = node_set.size();
  if (n > 6) throw Error(ErrorCode::kUnsupportedSize, "cycle construction supports n <= 6");
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "node set is empty");
  {
    std::set<NodeId> distinct(node_set.begin(), node_set.end());
    if (distinct.size() != n) throw Error(ErrorCode::kDuplicateNode, "node set has duplicates");
  }
  if (n == 1) return {node_set[0]};

  // Enumerate all arrangements of n-1 symbols as vertices; the edge w -> w'
  // exists when w' drops w's first symbol and appends one not in the rest.
  const std::size_t width = n - 1;
  std::vector<std::vector<std::size_t>> windows;
  std::map<std::vector<std::size_t>, std::size_t> id_of;
  {
    // Arrangements of width symbols in lexicographic order.
    std::vector<std::size_t> current;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self) -> void {
      if (current.size() == width) {
        id_of.emplace(current, windows.size());
        windows.push_back(current);
        return;
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (used[c]) continue;
        used[c] = true;
        current.push_back(c);
        self(self);
        current.pop_back();
        used[c] = false;
      }
    };
    rec(rec);
  }
  const std::size_t vertex_count = windows.size();
  std::vector<std::vector<std::size_t>> successors(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    std::vector<std::size_t> tail(windows[v].begin() + 1, windows[v].end());
    for (std::size_t c = 0; c < n; ++c) {
      if (std::find(tail.begin(), tail.end(), c) != tail.end()) continue;
      auto next = tail;
      next.push_back(c);
      successors[v].push_back(id_of.at(next));
    }
  }

  // Iterative DFS from vertex 0 (the identity arrangement).
  std::vector<std::size_t> path{0};
  std::vector<std::size_t> next_child{0};
  std::vector<bool> visited(vertex_count, false);
  visited[0] = true;
  std::uint64_t expansions = 0;
  while (!path.empty()) {
    const std::size_t v = path.back();
    if (path.size() == vertex_count) {
      const auto& succ = successors[v];
      if (std::find(succ.begin(), succ.end(), std::size_t{0}) != succ.end()) break;
    }
    std::size_t& child = next_child.back();
    bool advanced = false;
    while (child < successors[v].size()) {
      const std::size_t w = successors[v][child++];
      if (visited[w]) continue;
      if (++expansions > budget) {
        throw Error(ErrorCode::kBudgetExceeded,
                    "no cycle found within " + std::to_string(budget) + " expansions");
      }
      visited[w] = true;
      path.push_back(w);
      next_child.push_back(0);
      advanced = true;
      break;
    }
    if (!advanced) {
      visited[v] = false;
      path.pop_back();
      next_child.pop_back();
    }
  }
  if (path.empty()) throw Error(ErrorCode::kInvariantViolation, "no universal cycle exists");

  std::vector<NodeId> out;
  out.reserve(vertex_count);
  for (std::size_t v : path) out.push_back(node_set[windows[v][0]]);
  return out;
}

std::vector<NodeId> substitute_removed(std::span<const NodeId> symbols,
                                       std::span<const NodeId> removed) {
  const std::size_t len = symbols.size();
  // Walk backwards twice around the circle so each position learns the next
  // survivor at or after it.
  std::optional<std::size_t> next_survivor;
  std::vector<std::size_t> target(len, 0);
  for (std::size_t step = 2 * len; step-- > 0;) {
    const std::size_t i = step % len;
    if (!is_removed(removed, symbols[i])) next_survivor = i;
    if (next_survivor) target[i] = *next_survivor;
  }
  if (!next_survivor) throw Error(ErrorCode::kNoSurvivors, "every symbol is removed");
  std::vector<NodeId> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out.push_back(symbols[target[i]]);
  return out;
}

NodeId cycle_lookup(std::span<const NodeId> symbols, const BigUint& key,
                    std::span<const NodeId> removed) {
  if (symbols.empty()) throw Error(ErrorCode::kNoSurvivors, "cycle is empty");
  const std::size_t len = symbols.size();
  const std::size_t start = static_cast<std::size_t>(key.mod(len));
  for (std::size_t step = 0; step < len; ++step) {
    const NodeId& symbol = symbols[(start + step) % len];
    if (!is_removed(removed, symbol)) return symbol;
  }
  throw Error(ErrorCode::kNoSurvivors, "every symbol is removed");
}

std::map<NodeId, std::size_t> count_symbols(std::span<const NodeId> symbols) {
  std::map<NodeId, std::size_t> out;
  for (const auto& s : symbols) ++out[s];
  return out;
}

std::vector<NodeId> symbol_set(std::span<const NodeId> symbols) {
  std::vector<NodeId> out;
  for (const auto& s : symbols) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

}  // namespace permhash
