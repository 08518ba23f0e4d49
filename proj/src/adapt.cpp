#include "oada/adapt.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "oada/parallel.hpp"

namespace oada {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

}  // namespace

std::string AdaptTrace::to_csv() const {
  std::ostringstream out;
  out << "iter,op_id,kind,grad,energy,error_vs_fci,params,cnots,evals\n";
  for (const auto& r : records)
    out << r.iter << ',' << r.op_id << ',' << r.kind << ',' << fmt_real(r.grad) << ','
        << fmt_real(r.energy) << ',' << fmt_real(r.error_vs_fci) << ',' << r.params << ','
        << r.cnots << ',' << r.evals << '\n';
  return out.str();
}

ResourceCount count_resources(const Ansatz& a) {
  ResourceCount rc;
  for (const auto& e : a.entries) (e.excitation.is_single() ? rc.singles : rc.doubles)++;
  return rc;
}

std::vector<double> screen_energy_gradients(const Statevector& state, const OperatorKernel& h,
                                            const std::vector<PoolOperator>& pool) {
  const Statevector h_psi = h.apply(state);
  std::vector<double> g(pool.size());
  parallel_for(pool.size(), [&](std::size_t k) {
    g[k] = 2.0 * generator_element(h_psi, pool[k].excitation, state).real();
  });
  return g;
}

int argmax_magnitude(const std::vector<double>& g) {
  int best = -1;
  double best_mag = -1.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (std::abs(g[k]) > best_mag) {
      best_mag = std::abs(g[k]);
      best = static_cast<int>(k);
    }
  return best;
}

AdaptResult run_adapt(const OperatorKernel& h, const std::vector<PoolOperator>& pool, Ansatz init,
                      const AdaptOptions& options) {
  AdaptResult result;
  result.ansatz = std::move(init);
  Ansatz& ansatz = result.ansatz;

  auto make_record = [&](const Statevector& psi, double energy) {
    AdaptRecord r;
    r.energy = energy;
    r.error_vs_fci = options.e_fci ? energy - *options.e_fci : kNaN;
    r.params = static_cast<int>(ansatz.size());
    r.cnots = count_resources(ansatz).cnots();
    r.infidelity = options.monitor ? 1.0 - std::norm(overlap(*options.monitor, psi)) : kNaN;
    return r;
  };

  Statevector psi = apply_ansatz(ansatz);
  double energy = expectation(psi, h);
  {
    AdaptRecord r = make_record(psi, energy);
    r.kind = "init";
    result.trace.records.push_back(r);
  }

  for (int iter = 1;; ++iter) {
    if (static_cast<int>(ansatz.size()) >= options.max_ops) {
      result.stop_reason = "operator budget reached";
      break;
    }
    const auto grads = screen_energy_gradients(psi, h, pool);
    const int pick = argmax_magnitude(grads);
    if (pick < 0 || std::abs(grads[pick]) < options.eps) {
      result.stop_reason = "gradient below threshold";
      break;
    }
    const auto& op = pool[pick];
    ansatz.entries.push_back({op.id, op.excitation, 0.0});

    const Objective objective = [&](std::span<const double> x, std::span<double> grad) {
      auto vg = energy_and_gradient(ansatz, x, h);
      std::copy(vg.gradient.begin(), vg.gradient.end(), grad.begin());
      return vg.value;
    };
    const auto opt = minimize(objective, ansatz.thetas(), options.minimize);
    ansatz.set_thetas(opt.theta_opt);
    psi = apply_ansatz(ansatz);
    energy = opt.objective_value;

    AdaptRecord r = make_record(psi, energy);
    r.iter = iter;
    r.op_id = op.id;
    r.kind = op.excitation.kind_name();
    r.grad = std::abs(grads[pick]);
    r.evals = opt.n_evaluations;
    r.optimizer_converged = opt.converged;
    result.trace.records.push_back(r);
  }
  result.energy = energy;
  return result;
}

}  // namespace oada
