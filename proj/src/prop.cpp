#include "qdt/prop.hpp"

#include "qdt/errors.hpp"

namespace qdt {

struct Prop::Node {
  Kind kind;
  int var = -1;
  int max_var = -1;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

Prop Prop::top() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True});
  return Prop(node);
}

Prop Prop::bottom() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False});
  return Prop(node);
}

Prop Prop::var(int index) {
  if (index < 0) throw SemanticError("negative variable index");
  auto node = std::make_shared<const Node>(Node{Kind::Var, index, index});
  return Prop(std::move(node));
}

Prop operator!(const Prop& p) {
  auto node = std::make_shared<const Prop::Node>(
      Prop::Node{Prop::Kind::Not, -1, p.max_var(), p.node_});
  return Prop(std::move(node));
}

Prop operator&(const Prop& a, const Prop& b) {
  auto node = std::make_shared<const Prop::Node>(
      Prop::Node{Prop::Kind::And, -1, std::max(a.max_var(), b.max_var()), a.node_, b.node_});
  return Prop(std::move(node));
}

Prop operator|(const Prop& a, const Prop& b) {
  auto node = std::make_shared<const Prop::Node>(
      Prop::Node{Prop::Kind::Or, -1, std::max(a.max_var(), b.max_var()), a.node_, b.node_});
  return Prop(std::move(node));
}

Prop::Kind Prop::kind() const { return node_->kind; }

int Prop::var_index() const { return node_->var; }

Prop Prop::lhs() const { return Prop(node_->left); }

Prop Prop::rhs() const { return Prop(node_->right); }

int Prop::max_var() const { return node_->max_var; }

namespace {

bool eval_node(const Prop::Node* n, World w) {
  switch (n->kind) {
    case Prop::Kind::True:
      return true;
    case Prop::Kind::False:
      return false;
    case Prop::Kind::Var:
      return w.value(n->var);
    case Prop::Kind::Not:
      return !eval_node(n->left.get(), w);
    case Prop::Kind::And:
      return eval_node(n->left.get(), w) && eval_node(n->right.get(), w);
    case Prop::Kind::Or:
      return eval_node(n->left.get(), w) || eval_node(n->right.get(), w);
  }
  return false;
}

// Precedence levels for rendering: | = 0, & = 1, ! and atoms = 2.
int precedence(Prop::Kind k) {
  switch (k) {
    case Prop::Kind::Or:
      return 0;
    case Prop::Kind::And:
      return 1;
    default:
      return 2;
  }
}

void render(const Prop::Node* n, std::span<const Variable> vars, int parent_prec,
            std::string& out) {
  int prec = precedence(n->kind);
  bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (n->kind) {
    case Prop::Kind::True:
      out += "true";
      break;
    case Prop::Kind::False:
      out += "false";
      break;
    case Prop::Kind::Var:
      out += vars[static_cast<std::size_t>(n->var)].name;
      break;
    case Prop::Kind::Not:
      out += '!';
      render(n->left.get(), vars, 2, out);
      break;
    case Prop::Kind::And:
      render(n->left.get(), vars, 1, out);
      out += " & ";
      render(n->right.get(), vars, 1, out);
      break;
    case Prop::Kind::Or:
      render(n->left.get(), vars, 0, out);
      out += " | ";
      render(n->right.get(), vars, 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

bool Prop::eval(World w) const { return eval_node(node_.get(), w); }

std::string Prop::to_string(std::span<const Variable> vars) const {
  std::string out;
  render(node_.get(), vars, 0, out);
  return out;
}

bool eval_prop(World w, const Prop& p) { return p.eval(w); }

void check_prop_vars(const Prop& p, int n_vars) {
  if (p.max_var() >= n_vars)
    throw SemanticError("formula mentions unknown variable index " +
                        std::to_string(p.max_var()));
}

}  // namespace qdt
