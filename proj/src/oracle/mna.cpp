#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wdf/errors.hpp"
#include "wdf/oracle/net.hpp"

namespace wdf::oracle {

NetDescription& NetDescription::add(BranchKind kind, int a, int b, double value, bool driven) {
  Branch br;
  br.kind = kind;
  br.a = a;
  br.b = b;
  br.value = value;
  br.driven = driven;
  branches.push_back(br);
  node_count = std::max({node_count, a + 1, b + 1});
  return *this;
}

NetDescription& NetDescription::add_diode(BranchKind kind, int a, int b, const DiodeParams& params) {
  add(kind, a, b, params.saturation_current);
  branches.back().diode = params;
  return *this;
}

double TransientResult::branch_voltage(const NetDescription& net, int step, int branch) const {
  const Branch& br = net.branches.at(static_cast<std::size_t>(branch));
  return node_voltage(step, br.a) - node_voltage(step, br.b);
}

std::vector<double> TransientResult::voltage(int node) const {
  std::vector<double> v(static_cast<std::size_t>(node_voltage.rows()));
  for (Eigen::Index n = 0; n < node_voltage.rows(); ++n) v[static_cast<std::size_t>(n)] = node_voltage(n, node);
  return v;
}

namespace {

bool is_nonlinear(BranchKind k) { return k == BranchKind::Diode || k == BranchKind::DiodePair; }

void validate(const NetDescription& net) {
  if (net.node_count < 2) throw WiringError("net needs at least one node besides ground");
  for (const Branch& br : net.branches) {
    if (br.a < 0 || br.b < 0 || br.a >= net.node_count || br.b >= net.node_count || br.a == br.b)
      throw WiringError("branch has invalid terminals");
    switch (br.kind) {
      case BranchKind::Resistor:
      case BranchKind::Capacitor:
      case BranchKind::Inductor:
        if (!(br.value > 0.0) || !std::isfinite(br.value))
          throw ParameterError("R, C and L values must be positive and finite");
        break;
      case BranchKind::Diode:
      case BranchKind::DiodePair:
        br.diode.validate();
        break;
      default:
        break;
    }
  }

  // Every node needs a path to ground that does not pass through a current
  // source.
  std::vector<int> parent(static_cast<std::size_t>(net.node_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int n) {
    while (parent[n] != n) n = parent[n] = parent[parent[n]];
    return n;
  };
  for (const Branch& br : net.branches)
    if (br.kind != BranchKind::CurrentSource) parent[find(br.a)] = find(br.b);
  for (int n = 1; n < net.node_count; ++n)
    if (find(n) != find(0))
      throw SingularNetworkError("node " + std::to_string(n) + " has no DC path to ground", n);
}

/// Diode current and its derivative.
struct DiodeEval {
  double i;
  double g;
};

DiodeEval eval_diode(const Branch& br, double v) {
  const double nvt = br.diode.nvt();
  const double is = br.diode.saturation_current;
  if (br.kind == BranchKind::Diode) {
    const double e = std::exp(v / nvt);
    return {is * (e - 1.0), is * e / nvt};
  }
  const double e = std::exp(v / nvt);
  const double inv = 1.0 / e;
  return {is * (e - inv), is * (e + inv) / nvt};
}

/// SPICE-style junction voltage limiting.
double limit_junction(double v_new, double v_old, double nvt, double is) {
  const double vcrit = nvt * std::log(nvt / (std::sqrt(2.0) * is));
  if (v_new > vcrit && std::abs(v_new - v_old) > 2.0 * nvt) {
    if (v_old > 0.0) {
      const double arg = 1.0 + (v_new - v_old) / nvt;
      return arg > 0.0 ? v_old + nvt * std::log(arg) : vcrit;
    }
    return nvt * std::log(v_new / nvt);
  }
  return v_new;
}

double limit_branch(const Branch& br, double v_new, double v_old) {
  const double nvt = br.diode.nvt();
  const double is = br.diode.saturation_current;
  if (br.kind == BranchKind::Diode) return limit_junction(v_new, v_old, nvt, is);
  // The pair conducts in both directions; limit on magnitude.
  if (v_new >= 0.0) return limit_junction(v_new, std::max(v_old, 0.0), nvt, is);
  return -limit_junction(-v_new, std::max(-v_old, 0.0), nvt, is);
}

class Solver {
 public:
  Solver(const NetDescription& net, double fs, const TransientOptions& opt)
      : net_(net), fs_(fs), opt_(opt), nodes_(net.node_count - 1) {
    int m = 0;
    for (const Branch& br : net.branches) {
      source_row_.push_back(br.kind == BranchKind::VoltageSource ? nodes_ + m++ : -1);
      if (is_nonlinear(br.kind)) nonlinear_ = true;
    }
    size_ = nodes_ + m;
    const auto nb = net.branches.size();
    v_prev_.assign(nb, 0.0);
    i_prev_.assign(nb, 0.0);
    v_lin_.assign(nb, 0.0);
    x_ = Eigen::VectorXd::Zero(size_);
    if (!nonlinear_) {
      build_matrix();
      lu_.compute(a_);
      check_conditioning();
    }
  }

  TransientResult run(std::span<const double> input) {
    const auto steps = static_cast<Eigen::Index>(input.size());
    const auto nb = static_cast<Eigen::Index>(net_.branches.size());
    TransientResult out;
    out.node_voltage = Eigen::MatrixXd::Zero(steps, net_.node_count);
    out.branch_current = Eigen::MatrixXd::Zero(steps, nb);

    for (Eigen::Index n = 0; n < steps; ++n) {
      const double x = input[static_cast<std::size_t>(n)];
      if (nonlinear_)
        newton_step(x, static_cast<int>(n), out);
      else
        x_ = lu_.solve(build_rhs(x));

      for (int k = 0; k < nodes_; ++k) out.node_voltage(n, k + 1) = x_(k);
      for (Eigen::Index k = 0; k < nb; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double v = branch_v(net_.branches[kk]);
        const double i = branch_i(kk, v, x);
        out.branch_current(n, k) = i;
        v_prev_[kk] = v;
        i_prev_[kk] = i;
      }
      out.max_residual = std::max(out.max_residual, kcl_residual(out, n));
    }
    return out;
  }

 private:
  double node_v(int node) const { return node == 0 ? 0.0 : x_(node - 1); }
  double branch_v(const Branch& br) const { return node_v(br.a) - node_v(br.b); }

  double source_value(const Branch& br, double x) const {
    return br.driven ? br.value * x : br.value;
  }

  /// Companion conductance of a linear branch (0 for sources).
  double conductance(const Branch& br) const {
    switch (br.kind) {
      case BranchKind::Resistor: return 1.0 / br.value;
      case BranchKind::Capacitor: return 2.0 * br.value * fs_;
      case BranchKind::Inductor: return 1.0 / (2.0 * br.value * fs_);
      default: return 0.0;
    }
  }

  /// History current of a reactive branch, flowing a -> b.
  double history(std::size_t k) const {
    const Branch& br = net_.branches[k];
    const double g = conductance(br);
    if (br.kind == BranchKind::Capacitor) return -g * v_prev_[k] - i_prev_[k];
    if (br.kind == BranchKind::Inductor) return i_prev_[k] + g * v_prev_[k];
    return 0.0;
  }

  void stamp_g(int a, int b, double g) {
    if (a > 0) a_(a - 1, a - 1) += g;
    if (b > 0) a_(b - 1, b - 1) += g;
    if (a > 0 && b > 0) {
      a_(a - 1, b - 1) -= g;
      a_(b - 1, a - 1) -= g;
    }
  }

  static void stamp_i(Eigen::VectorXd& z, int a, int b, double amps) {
    // `amps` leaves node a through the branch and enters node b.
    if (a > 0) z(a - 1) -= amps;
    if (b > 0) z(b - 1) += amps;
  }

  void build_matrix() {
    a_ = Eigen::MatrixXd::Zero(size_, size_);
    for (std::size_t k = 0; k < net_.branches.size(); ++k) {
      const Branch& br = net_.branches[k];
      if (br.kind == BranchKind::VoltageSource) {
        const int m = source_row_[k];
        if (br.a > 0) a_(br.a - 1, m) += 1.0, a_(m, br.a - 1) += 1.0;
        if (br.b > 0) a_(br.b - 1, m) -= 1.0, a_(m, br.b - 1) -= 1.0;
      } else if (is_nonlinear(br.kind)) {
        stamp_g(br.a, br.b, eval_diode(br, v_lin_[k]).g);
      } else {
        stamp_g(br.a, br.b, conductance(br));
      }
    }
  }

  Eigen::VectorXd build_rhs(double x) const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(size_);
    for (std::size_t k = 0; k < net_.branches.size(); ++k) {
      const Branch& br = net_.branches[k];
      switch (br.kind) {
        case BranchKind::VoltageSource: z(source_row_[k]) = source_value(br, x); break;
        case BranchKind::CurrentSource: stamp_i(z, br.a, br.b, source_value(br, x)); break;
        case BranchKind::Capacitor:
        case BranchKind::Inductor: stamp_i(z, br.a, br.b, history(k)); break;
        case BranchKind::Diode:
        case BranchKind::DiodePair: {
          const DiodeEval d = eval_diode(br, v_lin_[k]);
          stamp_i(z, br.a, br.b, d.i - d.g * v_lin_[k]);
          break;
        }
        default: break;
      }
    }
    return z;
  }

  void check_conditioning() const {
    if (!(lu_.rcond() > 1e-15))
      throw SingularNetworkError("nodal matrix is singular (voltage-source loop?)", -1);
  }

  void newton_step(double x, int step, TransientResult& out) {
    for (std::size_t k = 0; k < net_.branches.size(); ++k)
      if (is_nonlinear(net_.branches[k].kind)) v_lin_[k] = branch_v(net_.branches[k]);

    for (int iter = 1; iter <= opt_.max_newton_iterations; ++iter) {
      build_matrix();
      lu_.compute(a_);
      const Eigen::VectorXd next = lu_.solve(build_rhs(x));
      if (!next.allFinite()) break;

      const double delta = (next - x_).cwiseAbs().maxCoeff();
      const double scale = std::max(1.0, next.cwiseAbs().maxCoeff());
      x_ = next;

      bool limited = false;
      for (std::size_t k = 0; k < net_.branches.size(); ++k) {
        const Branch& br = net_.branches[k];
        if (!is_nonlinear(br.kind)) continue;
        const double v = branch_v(br);
        const double lim = limit_branch(br, v, v_lin_[k]);
        if (lim != v) limited = true;
        v_lin_[k] = lim;
      }
      out.max_newton_iterations = std::max(out.max_newton_iterations, iter);
      if (!limited && delta <= opt_.newton_tolerance * scale) return;
    }
    throw ConvergenceError("Newton did not converge at step " + std::to_string(step) + " within " +
                           std::to_string(opt_.max_newton_iterations) + " iterations");
  }

  double branch_i(std::size_t k, double v, double x) const {
    const Branch& br = net_.branches[k];
    switch (br.kind) {
      case BranchKind::Resistor: return v / br.value;
      case BranchKind::Capacitor:
      case BranchKind::Inductor: return conductance(br) * v + history(k);
      case BranchKind::VoltageSource: return x_(source_row_[k]);
      case BranchKind::CurrentSource: return source_value(br, x);
      case BranchKind::Diode:
      case BranchKind::DiodePair: return eval_diode(br, v).i;
    }
    return 0.0;
  }

  double kcl_residual(const TransientResult& out, Eigen::Index n) const {
    Eigen::VectorXd leaving = Eigen::VectorXd::Zero(net_.node_count);
    for (std::size_t k = 0; k < net_.branches.size(); ++k) {
      const double i = out.branch_current(n, static_cast<Eigen::Index>(k));
      leaving(net_.branches[k].a) += i;
      leaving(net_.branches[k].b) -= i;
    }
    return leaving.tail(nodes_).cwiseAbs().maxCoeff();
  }

  const NetDescription& net_;
  double fs_;
  TransientOptions opt_;
  int nodes_;
  int size_ = 0;
  bool nonlinear_ = false;
  std::vector<int> source_row_;
  std::vector<double> v_prev_;
  std::vector<double> i_prev_;
  std::vector<double> v_lin_;
  Eigen::MatrixXd a_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd x_;
};

}  // namespace

TransientResult mna_transient(const NetDescription& net, std::span<const double> input,
                              double sample_rate, const TransientOptions& options) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw ParameterError("sample rate must be positive and finite");
  validate(net);
  Solver solver(net, sample_rate, options);
  return solver.run(input);
}

}  // namespace wdf::oracle
