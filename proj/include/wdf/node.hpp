#pragma once

#include "wdf/tree.hpp"
#include "wdf/wave.hpp"

namespace wdf {

namespace early {

/// Base of every early-bound node. Per-sample methods are ordinary member
/// functions of the concrete type, so an adaptor that knows its children's
/// types calls them directly.
template <typename T>
class NodeBase : public TreeNode {
 public:
  using sample_type = T;
  WavePort<T> port;
};

}  // namespace early

namespace detail {

/// Node types whose reflected wave is identically zero (matched resistors,
/// and adaptors built only from them).
template <typename C>
concept ReflectsZero = requires { requires C::kReflectsZero; };

}  // namespace detail

namespace late {

/// Abstract node of the late-bound API. Adaptors hold children through this
/// interface and the tree may be rewired between samples.
template <typename T>
class Node : public TreeNode {
 public:
  using sample_type = T;
  WavePort<T> port;

  virtual T reflected() = 0;
  virtual void incident(T a) = 0;
};

}  // namespace late

}  // namespace wdf
