#include "delcheck/formula.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>
#include <utility>

namespace delcheck {

Proposition::Proposition(int id) : id_(id) {
  if (id < 1) {
    throw std::invalid_argument("proposition id must be >= 1, got " +
                                std::to_string(id));
  }
}

namespace {

bool valid_agent_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())))
    return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

AgentName::AgentName(std::string name) : name_(std::move(name)) {
  if (!valid_agent_name(name_)) {
    throw std::invalid_argument("invalid agent name '" + name_ + "'");
  }
}

struct Formula::Node {
  Kind kind;
  std::optional<Proposition> atom;  // Prop
  std::optional<AgentName> agent;   // KnowsThat / KnowsWhether
  std::vector<Formula> children;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::top() {
  static const Formula instance{std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}})};
  return instance;
}

Formula Formula::bot() {
  static const Formula instance{std::make_shared<const Node>(Node{Kind::Bot, {}, {}, {}})};
  return instance;
}

Formula Formula::prop(Proposition p) {
  return Formula{std::make_shared<const Node>(Node{Kind::Prop, p, {}, {}})};
}

Formula Formula::neg(Formula body) {
  return Formula{std::make_shared<const Node>(
      Node{Kind::Neg, {}, {}, {std::move(body)}})};
}

namespace {

std::vector<Formula> checked_parts(std::vector<Formula> parts,
                                   const char* what) {
  if (parts.size() < 2) {
    throw std::invalid_argument(std::string(what) +
                                " requires at least 2 operands");
  }
  return parts;
}

}  // namespace

Formula Formula::conj(std::vector<Formula> parts) {
  return Formula{std::make_shared<const Node>(
      Node{Kind::Conj, {}, {}, checked_parts(std::move(parts), "conj")})};
}

Formula Formula::disj(std::vector<Formula> parts) {
  return Formula{std::make_shared<const Node>(
      Node{Kind::Disj, {}, {}, checked_parts(std::move(parts), "disj")})};
}

Formula Formula::impl(Formula lhs, Formula rhs) {
  return Formula{std::make_shared<const Node>(
      Node{Kind::Impl, {}, {}, {std::move(lhs), std::move(rhs)}})};
}

Formula Formula::equiv(Formula lhs, Formula rhs) {
  return Formula{std::make_shared<const Node>(
      Node{Kind::Equiv, {}, {}, {std::move(lhs), std::move(rhs)}})};
}

Formula Formula::knows_that(AgentName agent, Formula body) {
  return Formula{std::make_shared<const Node>(
      Node{Kind::KnowsThat, {}, std::move(agent), {std::move(body)}})};
}

Formula Formula::knows_whether(AgentName agent, Formula body) {
  return Formula{std::make_shared<const Node>(
      Node{Kind::KnowsWhether, {}, std::move(agent), {std::move(body)}})};
}

Formula Formula::announce(Formula announced, Formula continuation) {
  return Formula{std::make_shared<const Node>(Node{
      Kind::Announce, {}, {}, {std::move(announced), std::move(continuation)}})};
}

Formula::Kind Formula::kind() const { return node_->kind; }

Proposition Formula::atom() const { return *node_->atom; }

const AgentName& Formula::agent() const { return *node_->agent; }

const std::vector<Formula>& Formula::children() const {
  return node_->children;
}

const Formula& Formula::child(std::size_t i) const {
  return node_->children.at(i);
}

const Formula& Formula::announced() const { return node_->children[0]; }

const Formula& Formula::continuation() const { return node_->children[1]; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->atom != other.node_->atom) return false;
  if (node_->agent != other.node_->agent) return false;
  return node_->children == other.node_->children;
}

std::size_t Formula::node_count() const {
  std::size_t count = 1;
  for (const Formula& c : node_->children) count += c.node_count();
  return count;
}

namespace {

void collect_props(const Formula& f, std::set<Proposition>& out) {
  if (f.kind() == Formula::Kind::Prop) {
    out.insert(f.atom());
    return;
  }
  for (const Formula& c : f.children()) collect_props(c, out);
}

void collect_agents(const Formula& f, std::set<AgentName>& out) {
  if (f.kind() == Formula::Kind::KnowsThat ||
      f.kind() == Formula::Kind::KnowsWhether) {
    out.insert(f.agent());
  }
  for (const Formula& c : f.children()) collect_agents(c, out);
}

}  // namespace

std::set<Proposition> free_props(const Formula& f) {
  std::set<Proposition> out;
  collect_props(f, out);
  return out;
}

std::set<AgentName> agents_of(const Formula& f) {
  std::set<AgentName> out;
  collect_agents(f, out);
  return out;
}

Formula expand_knows_whether(const Formula& f) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Bot:
    case Kind::Prop:
      return f;
    case Kind::Neg:
      return Formula::neg(expand_knows_whether(f.child()));
    case Kind::Conj:
    case Kind::Disj: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const Formula& c : f.children())
        parts.push_back(expand_knows_whether(c));
      return f.kind() == Kind::Conj ? Formula::conj(std::move(parts))
                                    : Formula::disj(std::move(parts));
    }
    case Kind::Impl:
      return Formula::impl(expand_knows_whether(f.child(0)),
                           expand_knows_whether(f.child(1)));
    case Kind::Equiv:
      return Formula::equiv(expand_knows_whether(f.child(0)),
                            expand_knows_whether(f.child(1)));
    case Kind::KnowsThat:
      return Formula::knows_that(f.agent(), expand_knows_whether(f.child()));
    case Kind::KnowsWhether: {
      Formula body = expand_knows_whether(f.child());
      return Formula::disj(
          {Formula::knows_that(f.agent(), body),
           Formula::knows_that(f.agent(), Formula::neg(body))});
    }
    case Kind::Announce:
      return Formula::announce(expand_knows_whether(f.announced()),
                               expand_knows_whether(f.continuation()));
  }
  throw std::logic_error("unhandled formula kind");
}

}  // namespace delcheck
