#include "pebble/plan_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pebble {

namespace {

class NodeNames {
 public:
  explicit NodeNames(const Instance& inst) : inst_(inst) {
    for (NodeId u = 0; u < static_cast<NodeId>(inst.labels.size()); ++u) {
      ids_.emplace(inst.labels[u], u);
    }
  }

  NodeId resolve(const std::string& tok, std::size_t line) const {
    if (!inst_.labels.empty()) {
      auto it = ids_.find(tok);
      if (it == ids_.end()) throw ParseError(line, "unknown node " + tok);
      return it->second;
    }
    auto id = inst_.lookup(tok);
    if (!id) throw ParseError(line, "unknown node " + tok);
    return *id;
  }

 private:
  const Instance& inst_;
  std::unordered_map<std::string, NodeId> ids_;
};

template <typename OnLine>
void for_each_record(std::istream& in, OnLine&& on_line) {
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ss(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    on_line(number, tokens);
  }
}

}  // namespace

void write_plan(std::ostream& out, const Instance& inst, const Plan& plan) {
  out << "# moves=" << plan.length() << '\n';
  for (const Move& m : plan.moves) {
    out << inst.name(m.from) << ' ' << inst.name(m.to) << '\n';
  }
}

void write_timed_plan(std::ostream& out, const Instance& inst,
                      const TimedPlan& plan, std::int64_t soc) {
  std::vector<TimedMove> moves = plan.moves;
  std::stable_sort(moves.begin(), moves.end(),
                   [](const TimedMove& a, const TimedMove& b) {
                     return a.t < b.t;
                   });
  out << "# moves=" << plan.move_count() << " makespan=" << makespan(plan)
      << " soc=" << soc << '\n';
  for (const TimedMove& m : moves) {
    out << inst.name(m.from) << ' ' << inst.name(m.to) << ' ' << m.t << '\n';
  }
}

Plan read_plan(std::istream& in, const Instance& inst) {
  NodeNames names(inst);
  Plan plan;
  for_each_record(in, [&](std::size_t line,
                          const std::vector<std::string>& tokens) {
    if (tokens.size() != 2) throw ParseError(line, "expected 'u v'");
    plan.moves.push_back(
        {names.resolve(tokens[0], line), names.resolve(tokens[1], line)});
  });
  return plan;
}

TimedPlan read_timed_plan(std::istream& in, const Instance& inst) {
  NodeNames names(inst);
  TimedPlan plan;
  for_each_record(in, [&](std::size_t line,
                          const std::vector<std::string>& tokens) {
    if (tokens.size() != 3) throw ParseError(line, "expected 'u v t'");
    Timestep t = 0;
    const std::string& ts = tokens[2];
    auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), t);
    if (ec != std::errc() || ptr != ts.data() + ts.size()) {
      throw ParseError(line, "bad timestep " + ts);
    }
    plan.moves.push_back({names.resolve(tokens[0], line),
                          names.resolve(tokens[1], line), t});
  });
  return plan;
}

}  // namespace pebble
