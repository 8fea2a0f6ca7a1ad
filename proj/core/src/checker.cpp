#include "delcheck/checker.hpp"

#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "delcheck/errors.hpp"
#include "delcheck/parser.hpp"

namespace delcheck {

namespace {

BoolFn translate_in(BddManager& m, const Scene& scene, BoolFn law,
                    const Formula& f) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::Top:
      return m.constant(true);
    case Kind::Bot:
      return m.constant(false);
    case Kind::Prop:
      return m.var(f.atom());
    case Kind::Neg:
      return m.neg(translate_in(m, scene, law, f.child()));
    case Kind::Conj: {
      BoolFn acc = m.constant(true);
      for (const Formula& c : f.children()) {
        acc = m.conj(acc, translate_in(m, scene, law, c));
      }
      return acc;
    }
    case Kind::Disj: {
      BoolFn acc = m.constant(false);
      for (const Formula& c : f.children()) {
        acc = m.disj(acc, translate_in(m, scene, law, c));
      }
      return acc;
    }
    case Kind::Impl:
      return m.impl(translate_in(m, scene, law, f.child(0)),
                    translate_in(m, scene, law, f.child(1)));
    case Kind::Equiv:
      return m.equiv(translate_in(m, scene, law, f.child(0)),
                     translate_in(m, scene, law, f.child(1)));
    case Kind::KnowsThat:
    case Kind::KnowsWhether: {
      const std::set<Proposition>& observed =
          scene.observations.at(f.agent());
      std::set<Proposition> hidden;
      for (Proposition p : scene.vocabulary) {
        if (!observed.contains(p)) hidden.insert(p);
      }
      BoolFn body = translate_in(m, scene, law, f.child());
      BoolFn knows_pos = m.forall_set(hidden, m.impl(law, body));
      if (f.kind() == Kind::KnowsThat) return knows_pos;
      BoolFn knows_neg = m.forall_set(hidden, m.impl(law, m.neg(body)));
      return m.disj(knows_pos, knows_neg);
    }
    case Kind::Announce: {
      BoolFn psi = translate_in(m, scene, law, f.announced());
      BoolFn updated = m.conj(law, psi);
      return m.impl(psi, translate_in(m, scene, updated, f.continuation()));
    }
  }
  throw std::logic_error("unhandled formula kind");
}

// Brute-force Kripke-style evaluation. States are vocabulary bitmasks; a
// model is the set of states still possible, starting from the law states
// and shrinking at announcements. The query is compiled to an index-based
// node table so results can be memoized on (node, model, state).
class ExplicitEvaluator {
 public:
  explicit ExplicitEvaluator(const Scene& scene) {
    std::uint32_t bit = 0;
    for (Proposition p : scene.vocabulary) bit_of_.emplace(p, bit++);
    for (const auto& [agent, observed] : scene.observations) {
      std::uint32_t mask = 0;
      for (Proposition p : observed) mask |= 1u << bit_of_.at(p);
      obs_mask_.emplace(agent, mask);
    }
    root_ = compile(scene.query);

    std::vector<std::uint32_t> initial;
    auto total = std::uint64_t{1} << scene.vocabulary.size();
    for (std::uint64_t s = 0; s < total; ++s) {
      auto state = static_cast<std::uint32_t>(s);
      if (eval_bool(scene.law, state)) initial.push_back(state);
    }
    models_.push_back(std::move(initial));
  }

  bool valid() {
    for (std::uint32_t s : models_[0]) {
      if (!holds(root_, s, 0)) return false;
    }
    return true;
  }

 private:
  struct CNode {
    Formula::Kind kind;
    std::uint32_t prop_bit = 0;  // Prop
    std::uint32_t obs_mask = 0;  // KnowsThat / KnowsWhether
    std::vector<int> children;
  };

  int compile(const Formula& f) {
    CNode node;
    node.kind = f.kind();
    if (f.kind() == Formula::Kind::Prop) {
      node.prop_bit = bit_of_.at(f.atom());
    }
    if (f.kind() == Formula::Kind::KnowsThat ||
        f.kind() == Formula::Kind::KnowsWhether) {
      node.obs_mask = obs_mask_.at(f.agent());
    }
    for (const Formula& c : f.children()) {
      node.children.push_back(compile(c));
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool eval_bool(const Formula& f, std::uint32_t state) const {
    using Kind = Formula::Kind;
    switch (f.kind()) {
      case Kind::Top:
        return true;
      case Kind::Bot:
        return false;
      case Kind::Prop:
        return (state >> bit_of_.at(f.atom())) & 1u;
      case Kind::Neg:
        return !eval_bool(f.child(), state);
      case Kind::Conj:
        for (const Formula& c : f.children()) {
          if (!eval_bool(c, state)) return false;
        }
        return true;
      case Kind::Disj:
        for (const Formula& c : f.children()) {
          if (eval_bool(c, state)) return true;
        }
        return false;
      case Kind::Impl:
        return !eval_bool(f.child(0), state) || eval_bool(f.child(1), state);
      case Kind::Equiv:
        return eval_bool(f.child(0), state) == eval_bool(f.child(1), state);
      default:
        throw std::logic_error("modal operator in Boolean context");
    }
  }

  bool holds(int node, std::uint32_t state, int model) {
    std::uint64_t key = (static_cast<std::uint64_t>(node) << 48) |
                        (static_cast<std::uint64_t>(model) << 32) | state;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool result = compute(node, state, model);
    memo_.emplace(key, result);
    return result;
  }

  bool compute(int node, std::uint32_t state, int model) {
    using Kind = Formula::Kind;
    const CNode& n = nodes_[node];
    switch (n.kind) {
      case Kind::Top:
        return true;
      case Kind::Bot:
        return false;
      case Kind::Prop:
        return (state >> n.prop_bit) & 1u;
      case Kind::Neg:
        return !holds(n.children[0], state, model);
      case Kind::Conj:
        for (int c : n.children) {
          if (!holds(c, state, model)) return false;
        }
        return true;
      case Kind::Disj:
        for (int c : n.children) {
          if (holds(c, state, model)) return true;
        }
        return false;
      case Kind::Impl:
        return !holds(n.children[0], state, model) ||
               holds(n.children[1], state, model);
      case Kind::Equiv:
        return holds(n.children[0], state, model) ==
               holds(n.children[1], state, model);
      case Kind::KnowsThat: {
        for (std::uint32_t t : models_[model]) {
          if ((t & n.obs_mask) == (state & n.obs_mask) &&
              !holds(n.children[0], t, model)) {
            return false;
          }
        }
        return true;
      }
      case Kind::KnowsWhether: {
        bool all_true = true;
        bool all_false = true;
        for (std::uint32_t t : models_[model]) {
          if ((t & n.obs_mask) != (state & n.obs_mask)) continue;
          if (holds(n.children[0], t, model)) {
            all_false = false;
          } else {
            all_true = false;
          }
          if (!all_true && !all_false) return false;
        }
        return all_true || all_false;
      }
      case Kind::Announce: {
        if (!holds(n.children[0], state, model)) return true;
        return holds(n.children[1], state, restricted(model, node));
      }
    }
    throw std::logic_error("unhandled formula kind");
  }

  // The announcement filter does not depend on the evaluation state, so each
  // (model, announce node) pair restricts to one shared child model.
  int restricted(int model, int node) {
    auto it = restricted_.find({model, node});
    if (it != restricted_.end()) return it->second;
    std::vector<std::uint32_t> next;
    for (std::uint32_t t : models_[model]) {
      if (holds(nodes_[node].children[0], t, model)) next.push_back(t);
    }
    models_.push_back(std::move(next));
    int id = static_cast<int>(models_.size()) - 1;
    restricted_.emplace(std::make_pair(model, node), id);
    return id;
  }

  std::map<Proposition, std::uint32_t> bit_of_;
  std::map<AgentName, std::uint32_t> obs_mask_;
  std::vector<CNode> nodes_;
  int root_ = -1;
  std::vector<std::vector<std::uint32_t>> models_;
  std::map<std::pair<int, int>, int> restricted_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace

KnowledgeState make_state(BddManager& m, Scene scene) {
  BoolFn law = translate_in(m, scene, m.constant(true), scene.law);
  return KnowledgeState{std::move(scene), law};
}

BoolFn translate(BddManager& m, const KnowledgeState& ks, const Formula& f) {
  return translate_in(m, ks.scene, ks.current_law, f);
}

QueryResult check_valid(const Scene& scene) {
  auto start = std::chrono::steady_clock::now();
  BddManager m(scene.vocabulary);
  KnowledgeState ks = make_state(m, scene);
  BoolFn query_fn = translate(m, ks, scene.query);
  QueryResult result;
  result.verdict = m.is_tautology(m.impl(ks.current_law, query_fn));
  result.state_count = count_satisfying(m, ks.current_law);
  result.peak_node_count = m.size();
  result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

bool check_valid_explicit(const Scene& scene) {
  if (scene.vocabulary.size() > kExplicitVocabularyLimit) {
    throw VocabularyTooLargeError(scene.vocabulary.size(),
                                  kExplicitVocabularyLimit);
  }
  return ExplicitEvaluator(scene).valid();
}

QueryResult run_query(const std::string& text) {
  return check_valid(parse_scene(text));
}

std::uint64_t count_satisfying(const BddManager& m, BoolFn f) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();

  // Counts cover the variables at or below a node's level; each variable
  // skipped between a node and its child doubles the child's count.
  auto scaled = [&](std::uint64_t count, std::size_t skipped) {
    if (count == 0) return std::uint64_t{0};
    if (skipped >= 64) return kMax;
    std::uint64_t factor = std::uint64_t{1} << skipped;
    if (count > kMax / factor) return kMax;
    return count * factor;
  };

  std::map<std::uint32_t, std::uint64_t> memo;
  std::function<std::uint64_t(BoolFn)> walk = [&](BoolFn g) -> std::uint64_t {
    if (m.is_terminal(g)) return m.terminal_value(g) ? 1 : 0;
    auto it = memo.find(m.id(g));
    if (it != memo.end()) return it->second;
    BddManager::NodeView view = m.node(g);
    std::size_t here = m.level(g);
    std::uint64_t low = scaled(walk(view.low), m.level(view.low) - here - 1);
    std::uint64_t high =
        scaled(walk(view.high), m.level(view.high) - here - 1);
    std::uint64_t total = low > kMax - high ? kMax : low + high;
    memo.emplace(m.id(g), total);
    return total;
  };
  return scaled(walk(f), m.level(f));
}

}  // namespace delcheck
