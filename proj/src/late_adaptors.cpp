#include "wdf/adaptors.hpp"

#include "wdf/errors.hpp"

namespace wdf::late {

namespace {

template <typename T>
std::vector<TreeNode*> as_tree_nodes(const std::vector<Node<T>*>& nodes) {
  return {nodes.begin(), nodes.end()};
}

template <typename T>
bool all_prepared(std::initializer_list<const Node<T>*> nodes) {
  for (const Node<T>* n : nodes)
    if (n == nullptr || !n->is_prepared()) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- Series

template <typename T>
Series<T>::Series(Node<T>& child1, Node<T>& child2) {
  connect(child1, child2);
}

template <typename T>
void Series<T>::connect(Node<T>& child1, Node<T>& child2) {
  TreeNode* previous[] = {c1_, c2_};
  TreeNode* next[] = {&child1, &child2};
  TreeNode::rewire(*this, previous, next);
  c1_ = &child1;
  c2_ = &child2;
  this->propagate_impedance_change();
}

template <typename T>
void Series<T>::disconnect() noexcept {
  if (c1_ != nullptr) TreeNode::detach(*c1_);
  if (c2_ != nullptr) TreeNode::detach(*c2_);
  c1_ = c2_ = nullptr;
}

template <typename T>
T Series<T>::reflected() {
  this->port.b = kernels::series_reflect(c1_->reflected(), c2_->reflected());
  return this->port.b;
}

template <typename T>
void Series<T>::incident(T a) {
  const T to1 = kernels::series_to_child1(a, c1_->port.b, c2_->port.b, p_);
  c1_->incident(to1);
  c2_->incident(kernels::series_to_child2(a, to1));
  this->port.a = a;
}

template <typename T>
bool Series<T>::is_prepared() const {
  return all_prepared<T>({c1_, c2_});
}

template <typename T>
void Series<T>::calc_impedance() {
  if (c1_ == nullptr || c2_ == nullptr) return;
  this->port.set_impedance(kernels::series_impedance(c1_->port.R, c2_->port.R));
  p_ = kernels::series_coefficient(c1_->port.R, this->port.R);
}

// -------------------------------------------------------------- Parallel

template <typename T>
Parallel<T>::Parallel(Node<T>& child1, Node<T>& child2) {
  connect(child1, child2);
}

template <typename T>
void Parallel<T>::connect(Node<T>& child1, Node<T>& child2) {
  TreeNode* previous[] = {c1_, c2_};
  TreeNode* next[] = {&child1, &child2};
  TreeNode::rewire(*this, previous, next);
  c1_ = &child1;
  c2_ = &child2;
  this->propagate_impedance_change();
}

template <typename T>
void Parallel<T>::disconnect() noexcept {
  if (c1_ != nullptr) TreeNode::detach(*c1_);
  if (c2_ != nullptr) TreeNode::detach(*c2_);
  c1_ = c2_ = nullptr;
}

template <typename T>
T Parallel<T>::reflected() {
  const T b1 = c1_->reflected();
  const T b2 = c2_->reflected();
  diff_ = kernels::parallel_difference(b1, b2);
  this->port.b = kernels::parallel_reflect(b2, diff_, p_);
  return this->port.b;
}

template <typename T>
void Parallel<T>::incident(T a) {
  const T to2 = kernels::parallel_to_child2(a, this->port.b, c2_->port.b);
  c1_->incident(kernels::parallel_to_child1(to2, diff_));
  c2_->incident(to2);
  this->port.a = a;
}

template <typename T>
bool Parallel<T>::is_prepared() const {
  return all_prepared<T>({c1_, c2_});
}

template <typename T>
void Parallel<T>::calc_impedance() {
  if (c1_ == nullptr || c2_ == nullptr) return;
  const T g = kernels::parallel_conductance(c1_->port.G, c2_->port.G);
  this->port.set_impedance(T(1) / g);
  p_ = kernels::parallel_coefficient(c1_->port.G, g);
}

// -------------------------------------------------------------- Inverter

template <typename T>
Inverter<T>::Inverter(Node<T>& child) {
  connect(child);
}

template <typename T>
void Inverter<T>::connect(Node<T>& child) {
  TreeNode* previous[] = {c_};
  TreeNode* next[] = {&child};
  TreeNode::rewire(*this, previous, next);
  c_ = &child;
  this->propagate_impedance_change();
}

template <typename T>
void Inverter<T>::disconnect() noexcept {
  if (c_ != nullptr) TreeNode::detach(*c_);
  c_ = nullptr;
}

template <typename T>
T Inverter<T>::reflected() {
  this->port.b = -c_->reflected();
  return this->port.b;
}

template <typename T>
void Inverter<T>::incident(T a) {
  this->port.a = a;
  c_->incident(-a);
}

template <typename T>
bool Inverter<T>::is_prepared() const {
  return all_prepared<T>({c_});
}

template <typename T>
void Inverter<T>::calc_impedance() {
  if (c_ != nullptr) this->port.set_impedance(c_->port.R);
}

// --------------------------------------------------------------- SeriesN

template <typename T>
SeriesN<T>::SeriesN(std::vector<Node<T>*> children) {
  connect(std::move(children));
}

template <typename T>
void SeriesN<T>::connect(std::vector<Node<T>*> children) {
  if (children.empty()) throw WiringError("series adaptor needs at least one child");
  const auto previous = as_tree_nodes(children_);
  const auto next = as_tree_nodes(children);
  TreeNode::rewire(*this, previous, next);
  children_ = std::move(children);
  weight_.assign(children_.size(), T{});
  this->propagate_impedance_change();
}

template <typename T>
T SeriesN<T>::reflected() {
  T sum{};
  for (Node<T>* c : children_) sum += c->reflected();
  this->port.b = -sum;
  return this->port.b;
}

template <typename T>
void SeriesN<T>::incident(T a) {
  T total = a;
  for (Node<T>* c : children_) total += c->port.b;
  for (std::size_t k = 0; k < children_.size(); ++k)
    children_[k]->incident(children_[k]->port.b - weight_[k] * total);
  this->port.a = a;
}

template <typename T>
bool SeriesN<T>::is_prepared() const {
  for (const Node<T>* c : children_)
    if (!c->is_prepared()) return false;
  return !children_.empty();
}

template <typename T>
void SeriesN<T>::calc_impedance() {
  if (children_.empty()) return;
  T r{};
  for (Node<T>* c : children_) r += c->port.R;
  this->port.set_impedance(r);
  for (std::size_t k = 0; k < children_.size(); ++k) weight_[k] = children_[k]->port.R / r;
}

// ------------------------------------------------------------- ParallelN

template <typename T>
ParallelN<T>::ParallelN(std::vector<Node<T>*> children) {
  connect(std::move(children));
}

template <typename T>
void ParallelN<T>::connect(std::vector<Node<T>*> children) {
  if (children.empty()) throw WiringError("parallel adaptor needs at least one child");
  const auto previous = as_tree_nodes(children_);
  const auto next = as_tree_nodes(children);
  TreeNode::rewire(*this, previous, next);
  children_ = std::move(children);
  weight_.assign(children_.size(), T{});
  this->propagate_impedance_change();
}

template <typename T>
T ParallelN<T>::reflected() {
  T sum{};
  for (std::size_t k = 0; k < children_.size(); ++k)
    sum += weight_[k] * children_[k]->reflected();
  this->port.b = sum;
  return this->port.b;
}

template <typename T>
void ParallelN<T>::incident(T a) {
  const T common = a + this->port.b;
  for (Node<T>* c : children_) c->incident(common - c->port.b);
  this->port.a = a;
}

template <typename T>
bool ParallelN<T>::is_prepared() const {
  for (const Node<T>* c : children_)
    if (!c->is_prepared()) return false;
  return !children_.empty();
}

template <typename T>
void ParallelN<T>::calc_impedance() {
  if (children_.empty()) return;
  T g{};
  for (Node<T>* c : children_) g += c->port.G;
  this->port.set_impedance(T(1) / g);
  for (std::size_t k = 0; k < children_.size(); ++k) weight_[k] = children_[k]->port.G / g;
}

template class Series<float>;
template class Series<double>;
template class Series<Batch<float, 4>>;
template class Parallel<float>;
template class Parallel<double>;
template class Parallel<Batch<float, 4>>;
template class Inverter<float>;
template class Inverter<double>;
template class Inverter<Batch<float, 4>>;
template class SeriesN<float>;
template class SeriesN<double>;
template class ParallelN<float>;
template class ParallelN<double>;

}  // namespace wdf::late
