#include "delcheck/bdd.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "delcheck/errors.hpp"

namespace delcheck {

namespace {

constexpr std::uint32_t kFalse = 0;
constexpr std::uint32_t kTrue = 1;
constexpr std::uint32_t kMaxNodes = 1u << 26;

std::uint64_t unique_key(std::uint32_t level, std::uint32_t low,
                         std::uint32_t high) {
  return (static_cast<std::uint64_t>(level) << 52) |
         (static_cast<std::uint64_t>(low) << 26) | high;
}

}  // namespace

BddManager::BddManager(std::vector<Proposition> vocabulary)
    : vocabulary_(std::move(vocabulary)) {
  std::sort(vocabulary_.begin(), vocabulary_.end());
  vocabulary_.erase(std::unique(vocabulary_.begin(), vocabulary_.end()),
                    vocabulary_.end());
  auto terminal_level = static_cast<std::uint32_t>(vocabulary_.size());
  nodes_.push_back(Node{terminal_level, kFalse, kFalse});
  nodes_.push_back(Node{terminal_level, kTrue, kTrue});
  var_ref_.reserve(vocabulary_.size());
  for (std::uint32_t lvl = 0; lvl < vocabulary_.size(); ++lvl) {
    var_level_.emplace(vocabulary_[lvl], lvl);
    var_ref_.push_back(make(lvl, kFalse, kTrue));
  }
}

std::uint32_t BddManager::unwrap(BoolFn f) const {
  if (f.mgr_ != this) throw ManagerMismatchError();
  return f.ref_;
}

std::uint32_t BddManager::make(std::uint32_t level, std::uint32_t low,
                               std::uint32_t high) {
  if (low == high) return low;
  std::uint64_t key = unique_key(level, low, high);
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= kMaxNodes) {
    throw Error("BDD node limit exceeded");
  }
  auto ref = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{level, low, high});
  unique_.emplace(key, ref);
  return ref;
}

std::uint32_t BddManager::apply(Op op, std::uint32_t f, std::uint32_t g) {
  switch (op) {
    case Op::And:
      if (f == kFalse || g == kFalse) return kFalse;
      if (f == kTrue) return g;
      if (g == kTrue) return f;
      if (f == g) return f;
      break;
    case Op::Or:
      if (f == kTrue || g == kTrue) return kTrue;
      if (f == kFalse) return g;
      if (g == kFalse) return f;
      if (f == g) return f;
      break;
    case Op::Xor:
      if (f == g) return kFalse;
      if (f == kFalse) return g;
      if (g == kFalse) return f;
      break;
    default:
      throw std::logic_error("apply called with quantifier op");
  }
  if (f > g) std::swap(f, g);  // And/Or/Xor are commutative
  std::uint64_t key = (static_cast<std::uint64_t>(op) << 60) |
                      (static_cast<std::uint64_t>(f) << 30) | g;
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  std::uint32_t fl = nodes_[f].level;
  std::uint32_t gl = nodes_[g].level;
  std::uint32_t top = std::min(fl, gl);
  std::uint32_t f0 = fl == top ? nodes_[f].low : f;
  std::uint32_t f1 = fl == top ? nodes_[f].high : f;
  std::uint32_t g0 = gl == top ? nodes_[g].low : g;
  std::uint32_t g1 = gl == top ? nodes_[g].high : g;
  std::uint32_t result =
      make(top, apply(op, f0, g0), apply(op, f1, g1));
  cache_.emplace(key, result);
  return result;
}

std::uint32_t BddManager::quantify(Op op, std::uint32_t f,
                                   std::uint32_t cube) {
  if (cube == kTrue || f <= kTrue) return f;
  while (cube != kTrue && nodes_[cube].level < nodes_[f].level) {
    cube = nodes_[cube].high;
  }
  if (cube == kTrue) return f;

  std::uint64_t key = (static_cast<std::uint64_t>(op) << 60) |
                      (static_cast<std::uint64_t>(f) << 30) | cube;
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  std::uint32_t fl = nodes_[f].level;
  std::uint32_t result;
  if (fl == nodes_[cube].level) {
    std::uint32_t rest = nodes_[cube].high;
    std::uint32_t low = quantify(op, nodes_[f].low, rest);
    std::uint32_t high = quantify(op, nodes_[f].high, rest);
    result = apply(op == Op::Forall ? Op::And : Op::Or, low, high);
  } else {
    result = make(fl, quantify(op, nodes_[f].low, cube),
                  quantify(op, nodes_[f].high, cube));
  }
  cache_.emplace(key, result);
  return result;
}

std::uint32_t BddManager::cube_of(const std::set<Proposition>& vars) {
  std::uint32_t cube = kTrue;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    auto found = var_level_.find(*it);
    if (found == var_level_.end()) throw UnknownVariableError(it->id());
    cube = make(found->second, kFalse, cube);
  }
  return cube;
}

BoolFn BddManager::constant(bool value) const {
  return BoolFn(this, value ? kTrue : kFalse);
}

BoolFn BddManager::var(Proposition p) const {
  auto it = var_level_.find(p);
  if (it == var_level_.end()) throw UnknownVariableError(p.id());
  return BoolFn(this, var_ref_[it->second]);
}

BoolFn BddManager::neg(BoolFn f) {
  return BoolFn(this, apply(Op::Xor, unwrap(f), kTrue));
}

BoolFn BddManager::conj(BoolFn f, BoolFn g) {
  return BoolFn(this, apply(Op::And, unwrap(f), unwrap(g)));
}

BoolFn BddManager::disj(BoolFn f, BoolFn g) {
  return BoolFn(this, apply(Op::Or, unwrap(f), unwrap(g)));
}

BoolFn BddManager::impl(BoolFn f, BoolFn g) {
  return BoolFn(this,
                apply(Op::Or, apply(Op::Xor, unwrap(f), kTrue), unwrap(g)));
}

BoolFn BddManager::equiv(BoolFn f, BoolFn g) {
  return BoolFn(this,
                apply(Op::Xor, apply(Op::Xor, unwrap(f), unwrap(g)), kTrue));
}

BoolFn BddManager::forall_set(const std::set<Proposition>& vars, BoolFn f) {
  return BoolFn(this, quantify(Op::Forall, unwrap(f), cube_of(vars)));
}

BoolFn BddManager::exists_set(const std::set<Proposition>& vars, BoolFn f) {
  return BoolFn(this, quantify(Op::Exists, unwrap(f), cube_of(vars)));
}

bool BddManager::eval(BoolFn f, const Assignment& a) const {
  for (Proposition p : vocabulary_) {
    if (!a.contains(p)) {
      throw PartialAssignmentError("assignment missing proposition " +
                                   std::to_string(p.id()));
    }
  }
  std::uint32_t ref = unwrap(f);
  while (ref > kTrue) {
    const Node& n = nodes_[ref];
    ref = a.at(vocabulary_[n.level]) ? n.high : n.low;
  }
  return ref == kTrue;
}

bool BddManager::is_tautology(BoolFn f) const { return unwrap(f) == kTrue; }

std::size_t BddManager::node_count(BoolFn f) const {
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{unwrap(f)};
  while (!stack.empty()) {
    std::uint32_t ref = stack.back();
    stack.pop_back();
    if (!seen.insert(ref).second) continue;
    if (ref > kTrue) {
      stack.push_back(nodes_[ref].low);
      stack.push_back(nodes_[ref].high);
    }
  }
  return seen.size();
}

bool BddManager::is_terminal(BoolFn f) const { return unwrap(f) <= kTrue; }

bool BddManager::terminal_value(BoolFn f) const {
  std::uint32_t ref = unwrap(f);
  if (ref > kTrue) throw std::logic_error("terminal_value of internal node");
  return ref == kTrue;
}

BddManager::NodeView BddManager::node(BoolFn f) const {
  std::uint32_t ref = unwrap(f);
  if (ref <= kTrue) throw std::logic_error("node view of terminal");
  const Node& n = nodes_[ref];
  return NodeView{vocabulary_[n.level], BoolFn(this, n.low),
                  BoolFn(this, n.high)};
}

std::size_t BddManager::level(BoolFn f) const {
  return nodes_[unwrap(f)].level;
}

std::string BddManager::to_dot(BoolFn f) const {
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{unwrap(f)};
  while (!stack.empty()) {
    std::uint32_t ref = stack.back();
    stack.pop_back();
    if (!seen.insert(ref).second) continue;
    if (ref > kTrue) {
      stack.push_back(nodes_[ref].low);
      stack.push_back(nodes_[ref].high);
    }
  }
  std::ostringstream os;
  os << "digraph bdd {\n";
  for (std::uint32_t ref : seen) {
    if (ref <= kTrue) {
      os << "  n" << ref << " [shape=box label=\"" << ref << "\"];\n";
    } else {
      const Node& n = nodes_[ref];
      os << "  n" << ref << " [shape=circle label=\""
         << vocabulary_[n.level].id() << "\"];\n";
      os << "  n" << ref << " -> n" << n.low << " [label=\"0\" style=dashed];\n";
      os << "  n" << ref << " -> n" << n.high << " [label=\"1\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace delcheck
