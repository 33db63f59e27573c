#include "wdf/rtype.hpp"

#include <numeric>

namespace wdf {

namespace {

void validate(const ResistiveJunction& junction, std::span<const double> port_resistance) {
  if (junction.node_count < 2) throw WiringError("junction needs at least two nodes");
  if (port_resistance.size() != junction.ports.size())
    throw WiringError("junction has " + std::to_string(junction.ports.size()) +
                      " ports but " + std::to_string(port_resistance.size()) +
                      " port resistances were given");
  auto in_range = [&](int n) { return n >= 0 && n < junction.node_count; };
  for (const auto& p : junction.ports)
    if (!in_range(p.plus) || !in_range(p.minus) || p.plus == p.minus)
      throw WiringError("junction port has invalid terminals");
  for (const auto& r : junction.resistors)
    if (!in_range(r.a) || !in_range(r.b) || !(r.resistance > 0.0))
      throw WiringError("junction resistor has invalid terminals or value");
}

/// Throws SingularNetworkError for the first node without a conductive path
/// to the datum. `skip_port` is left out of the graph.
void check_connected(const ResistiveJunction& junction, std::span<const double> port_resistance,
                     int skip_port) {
  std::vector<int> parent(static_cast<std::size_t>(junction.node_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int n) {
    while (parent[n] != n) n = parent[n] = parent[parent[n]];
    return n;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  for (std::size_t k = 0; k < junction.ports.size(); ++k) {
    if (static_cast<int>(k) == skip_port) continue;
    if (!(port_resistance[k] > 0.0) || !std::isfinite(port_resistance[k]))
      throw ParameterError("port resistance must be positive and finite");
    unite(junction.ports[k].plus, junction.ports[k].minus);
  }
  for (const auto& r : junction.resistors) unite(r.a, r.b);

  for (int n = 1; n < junction.node_count; ++n)
    if (find(n) != find(0))
      throw SingularNetworkError(
          "junction node " + std::to_string(n) + " has no path to the datum node", n);
}

void stamp_conductance(Eigen::MatrixXd& y, int a, int b, double g) {
  // Node 0 is the datum and has no row.
  if (a > 0) y(a - 1, a - 1) += g;
  if (b > 0) y(b - 1, b - 1) += g;
  if (a > 0 && b > 0) {
    y(a - 1, b - 1) -= g;
    y(b - 1, a - 1) -= g;
  }
}

Eigen::MatrixXd nodal_matrix(const ResistiveJunction& junction,
                             std::span<const double> port_resistance, int skip_port) {
  const int n = junction.node_count - 1;
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < junction.ports.size(); ++k) {
    if (static_cast<int>(k) == skip_port) continue;
    stamp_conductance(y, junction.ports[k].plus, junction.ports[k].minus,
                      1.0 / port_resistance[k]);
  }
  for (const auto& r : junction.resistors) stamp_conductance(y, r.a, r.b, 1.0 / r.resistance);
  return y;
}

double node_voltage(const Eigen::VectorXd& v, int node) { return node == 0 ? 0.0 : v(node - 1); }

void inject(Eigen::VectorXd& rhs, int plus, int minus, double amps) {
  if (plus > 0) rhs(plus - 1) += amps;
  if (minus > 0) rhs(minus - 1) -= amps;
}

}  // namespace

Eigen::MatrixXd synthesize_scattering(const ResistiveJunction& junction,
                                      std::span<const double> port_resistance) {
  validate(junction, port_resistance);
  check_connected(junction, port_resistance, -1);

  const int ports = static_cast<int>(junction.ports.size());
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(nodal_matrix(junction, port_resistance, -1));

  Eigen::MatrixXd s(ports, ports);
  Eigen::VectorXd rhs(junction.node_count - 1);
  for (int j = 0; j < ports; ++j) {
    // Port j becomes a 1 V source behind R_j; its Norton current G_j flows
    // into the plus terminal.
    rhs.setZero();
    inject(rhs, junction.ports[j].plus, junction.ports[j].minus, 1.0 / port_resistance[j]);
    const Eigen::VectorXd v = lu.solve(rhs);
    for (int k = 0; k < ports; ++k) {
      const double vk = node_voltage(v, junction.ports[k].plus) -
                        node_voltage(v, junction.ports[k].minus);
      s(k, j) = 2.0 * vk - (k == j ? 1.0 : 0.0);
    }
  }
  return s;
}

double port_thevenin_resistance(const ResistiveJunction& junction,
                                std::span<const double> port_resistance, int port) {
  validate(junction, port_resistance);
  if (port < 0 || port >= static_cast<int>(junction.ports.size()))
    throw WiringError("port index out of range");
  check_connected(junction, port_resistance, port);

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(nodal_matrix(junction, port_resistance, port));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(junction.node_count - 1);
  inject(rhs, junction.ports[port].plus, junction.ports[port].minus, 1.0);
  const Eigen::VectorXd v = lu.solve(rhs);
  return node_voltage(v, junction.ports[port].plus) - node_voltage(v, junction.ports[port].minus);
}

namespace late {

// ----------------------------------------------------------- RootRtype

template <typename T>
RootRtype<T>::RootRtype(std::vector<Node<T>*> children, Calculator calc) {
  connect(std::move(children), std::move(calc));
}

template <typename T>
void RootRtype<T>::connect(std::vector<Node<T>*> children, Calculator calc) {
  if (children.empty()) throw WiringError("R-type junction needs at least one child");
  std::vector<TreeNode*> previous(children_.begin(), children_.end());
  std::vector<TreeNode*> next(children.begin(), children.end());
  TreeNode::rewire(*this, previous, next);
  children_ = std::move(children);
  calc_ = std::move(calc);
  smat_.resize(port_count());
  a_.assign(static_cast<std::size_t>(smat_.padded_ports()), T{});
  b_.assign(static_cast<std::size_t>(smat_.padded_ports()), T{});
  this->propagate_impedance_change();
}

template <typename T>
std::vector<T> RootRtype<T>::port_impedances() const {
  std::vector<T> r;
  r.reserve(children_.size());
  for (const Node<T>* c : children_) r.push_back(c->port.R);
  return r;
}

template <typename T>
void RootRtype<T>::set_smatrix(const Eigen::Ref<const Eigen::MatrixXd>& s) {
  smat_.assign(s);
}

template <typename T>
void RootRtype<T>::compute() {
  const std::size_t n = children_.size();
  for (std::size_t k = 0; k < n; ++k) a_[k] = children_[k]->reflected();
  smat_.apply(a_.data(), b_.data());
  for (std::size_t k = 0; k < n; ++k) children_[k]->incident(b_[k]);
}

template <typename T>
bool RootRtype<T>::is_prepared() const {
  for (const Node<T>* c : children_)
    if (!c->is_prepared()) return false;
  return !children_.empty();
}

template <typename T>
void RootRtype<T>::calc_impedance() {
  if (children_.empty() || !calc_) return;
  calc_(*this);
}

// --------------------------------------------------------------- Rtype

template <typename T>
Rtype<T>::Rtype(std::vector<Node<T>*> children, Calculator calc) {
  connect(std::move(children), std::move(calc));
}

template <typename T>
void Rtype<T>::connect(std::vector<Node<T>*> children, Calculator calc) {
  if (children.empty()) throw WiringError("R-type junction needs at least one child");
  std::vector<TreeNode*> previous(children_.begin(), children_.end());
  std::vector<TreeNode*> next(children.begin(), children.end());
  TreeNode::rewire(*this, previous, next);
  children_ = std::move(children);
  calc_ = std::move(calc);
  smat_.resize(child_count() + 1);
  a_.assign(static_cast<std::size_t>(smat_.padded_ports()), T{});
  b_.assign(static_cast<std::size_t>(smat_.padded_ports()), T{});
  this->propagate_impedance_change();
}

template <typename T>
std::vector<T> Rtype<T>::port_impedances() const {
  std::vector<T> r;
  r.reserve(children_.size());
  for (const Node<T>* c : children_) r.push_back(c->port.R);
  return r;
}

template <typename T>
void Rtype<T>::set_smatrix(const Eigen::Ref<const Eigen::MatrixXd>& s) {
  smat_.assign(s);
}

template <typename T>
T Rtype<T>::reflected() {
  const std::size_t n = children_.size();
  for (std::size_t k = 0; k < n; ++k) a_[k + 1] = children_[k]->reflected();
  a_[0] = T(0);
  this->port.b = smat_.row_dot(0, a_.data());
  return this->port.b;
}

template <typename T>
void Rtype<T>::incident(T a) {
  a_[0] = a;
  smat_.apply(a_.data(), b_.data());
  const std::size_t n = children_.size();
  for (std::size_t k = 0; k < n; ++k) children_[k]->incident(b_[k + 1]);
  this->port.a = a;
}

template <typename T>
bool Rtype<T>::is_prepared() const {
  for (const Node<T>* c : children_)
    if (!c->is_prepared()) return false;
  return !children_.empty();
}

template <typename T>
void Rtype<T>::calc_impedance() {
  if (children_.empty() || !calc_) return;
  calc_(*this);
  detail::require_reflection_free(smat_);
}

template class RootRtype<float>;
template class RootRtype<double>;
template class Rtype<float>;
template class Rtype<double>;

}  // namespace late

}  // namespace wdf
