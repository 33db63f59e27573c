#include "wdf/tree.hpp"

#include <algorithm>

namespace wdf {

TreeNode& TreeNode::root() noexcept {
  TreeNode* node = this;
  while (node->parent_ != nullptr) node = node->parent_;
  return *node;
}

int TreeNode::depth() const noexcept {
  int d = 0;
  for (const TreeNode* n = parent_; n != nullptr; n = n->parent_) ++d;
  return d;
}

UpdateSession* TreeNode::active_session() noexcept { return root().session_; }

void TreeNode::propagate_impedance_change() {
  recompute();
  notify_parent();
}

void TreeNode::notify_parent() {
  if (parent_ == nullptr) return;
  if (UpdateSession* session = active_session()) {
    session->mark_dirty(parent_);
    return;
  }
  parent_->propagate_impedance_change();
}

void TreeNode::check_attach(const TreeNode& parent, const TreeNode& child) {
  if (&parent == &child) throw WiringError("node cannot be its own child");
  if (child.parent_ != nullptr && child.parent_ != &parent)
    throw WiringError("node is already connected to another parent");
  for (const TreeNode* n = &parent; n != nullptr; n = n->parent_)
    if (n == &child) throw WiringError("connection would create a cycle");
}

void TreeNode::attach(TreeNode& parent, TreeNode& child) {
  check_attach(parent, child);
  child.parent_ = &parent;
}

void TreeNode::rewire(TreeNode& parent, std::span<TreeNode* const> previous,
                      std::span<TreeNode* const> next) {
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (next[i] == nullptr) throw WiringError("null child");
    for (std::size_t j = 0; j < i; ++j)
      if (next[j] == next[i]) throw WiringError("node connected twice to one adaptor");
    check_attach(parent, *next[i]);
  }
  for (TreeNode* old : previous)
    if (old != nullptr && old->parent_ == &parent) old->parent_ = nullptr;
  for (TreeNode* child : next) child->parent_ = &parent;
}

void TreeNode::detach(TreeNode& child) noexcept { child.parent_ = nullptr; }

UpdateSession::UpdateSession(TreeNode& root) : root_(root.root()) {
  outermost_ = root_.session_ == nullptr;
  if (outermost_) root_.session_ = this;
}

UpdateSession::~UpdateSession() {
  if (!outermost_) return;
  try {
    commit();
  } catch (...) {
    // A failed recompute in a destructor cannot be reported.
  }
  root_.session_ = nullptr;
}

void UpdateSession::mark_dirty(TreeNode* node) {
  if (!outermost_) {
    root_.session_->mark_dirty(node);
    return;
  }
  dirty_.push_back(node);
}

void UpdateSession::commit() {
  if (!outermost_ || dirty_.empty()) return;

  std::vector<TreeNode*> chain;
  for (TreeNode* node : dirty_)
    for (TreeNode* n = node; n != nullptr; n = n->parent_) chain.push_back(n);
  dirty_.clear();
  std::sort(chain.begin(), chain.end());
  chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
  std::stable_sort(chain.begin(), chain.end(), [](TreeNode* x, TreeNode* y) {
    return x->depth() > y->depth();
  });

  // Recompute without propagating: every ancestor is already in the chain.
  root_.session_ = nullptr;
  for (TreeNode* n : chain) n->recompute();
  root_.session_ = this;
}

}  // namespace wdf
