#pragma once

// Connection-tree bookkeeping shared by both composition APIs. Nothing in
// here runs per sample: it only carries impedance changes from a component
// up towards the root, either immediately or batched inside an UpdateSession.

#include <cstdint>
#include <span>
#include <vector>

#include "wdf/errors.hpp"

namespace wdf {

class UpdateSession;

class TreeNode {
 public:
  TreeNode() = default;
  TreeNode(const TreeNode&) = delete;
  TreeNode& operator=(const TreeNode&) = delete;
  virtual ~TreeNode() = default;

  TreeNode* parent() const noexcept { return parent_; }
  TreeNode& root() noexcept;

  /// Recomputes this node's own impedance, then notifies the parent chain.
  /// Inside an open UpdateSession the ancestors are only marked dirty.
  void propagate_impedance_change();

  /// Number of times this node has recomputed its impedance (or, for an
  /// R-type junction, its scattering matrix). Test instrumentation.
  std::uint64_t recompute_count() const noexcept { return recomputations_; }

  /// False while this node or any descendant still needs a sample rate.
  virtual bool is_prepared() const { return true; }

  /// Connects `child` below `parent`. Rejects a child that already has a
  /// different parent and any link that would close a cycle.
  static void attach(TreeNode& parent, TreeNode& child);
  static void check_attach(const TreeNode& parent, const TreeNode& child);
  static void detach(TreeNode& child) noexcept;

  /// Replaces `parent`'s children `previous` by `next`, validating every new
  /// link before touching any of them.
  static void rewire(TreeNode& parent, std::span<TreeNode* const> previous,
                     std::span<TreeNode* const> next);

 protected:
  /// Derive this node's port impedance from its own values and children.
  virtual void calc_impedance() = 0;

  /// calc_impedance() plus instrumentation.
  void recompute() {
    ++recomputations_;
    calc_impedance();
  }

  void notify_parent();

 private:
  friend class UpdateSession;

  int depth() const noexcept;
  UpdateSession* active_session() noexcept;

  TreeNode* parent_ = nullptr;
  UpdateSession* session_ = nullptr;  // only ever set on a root
  std::uint64_t recomputations_ = 0;
};

/// Defers impedance propagation for the tree under `root` until commit().
///
/// Every adaptor above a changed component recomputes exactly once per
/// commit, deepest first, so the root sees its children's final values. A
/// session opened while another is active on the same root is folded into
/// the outer one; only the outermost commit does any work.
class UpdateSession {
 public:
  explicit UpdateSession(TreeNode& root);
  UpdateSession(const UpdateSession&) = delete;
  UpdateSession& operator=(const UpdateSession&) = delete;
  ~UpdateSession();

  void commit();
  bool is_outermost() const noexcept { return outermost_; }

 private:
  friend class TreeNode;
  void mark_dirty(TreeNode* node);

  TreeNode& root_;
  bool outermost_;
  std::vector<TreeNode*> dirty_;
};

/// Runs `changes` inside one UpdateSession on `root`.
template <typename Fn>
void deferred_update(TreeNode& root, Fn&& changes) {
  UpdateSession session(root);
  changes();
  session.commit();
}

}  // namespace wdf
