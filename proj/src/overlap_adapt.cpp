#include "oada/overlap_adapt.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

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

TargetWavefunction::TargetWavefunction(Statevector s) : state_(std::move(s)) {
  if (std::abs(state_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("target wavefunction is not normalized");
}

TargetWavefunction TargetWavefunction::normalized(Statevector s) {
  if (s.norm() == 0.0) throw std::invalid_argument("target wavefunction is zero");
  s.normalize();
  return TargetWavefunction(std::move(s));
}

std::vector<double> screen_overlap_gradients(const Statevector& ref, const Statevector& state,
                                             const std::vector<PoolOperator>& pool) {
  std::vector<double> g(pool.size());
  parallel_for(pool.size(), [&](std::size_t k) {
    g[k] = std::abs(generator_element(ref, pool[k].excitation, state));
  });
  return g;
}

double four_angle_gradient(const Statevector& ref, const Statevector& state, const Excitation& e) {
  const double a = std::abs(overlap(ref, state));
  if (a < 1e-12) throw std::domain_error("four-angle gradient needs a nonzero reference overlap");
  auto f = [&](double t) {
    Statevector s = state;
    apply_excitation(s, e, t);
    return std::norm(overlap(ref, s));
  };
  using std::numbers::pi;
  const double w = 2.0 / std::sqrt(3.0);
  const double combo =
      0.5 * f(-pi / 2) - 0.5 * f(pi / 2) + w * f(pi / 3) - w * f(-pi / 3);
  return std::abs(combo) / (2.0 * a);
}

bool overlap_phase_aligned(const Statevector& ref, const Statevector& state, const Excitation& e,
                           double tol) {
  const Complex prod = std::conj(overlap(ref, state)) * generator_element(ref, e, state);
  return std::abs(prod.imag()) <= tol;
}

std::string OverlapTrace::to_csv() const {
  std::ostringstream out;
  out << "iter,op_id,kind,grad,infidelity,energy,params\n";
  for (const auto& r : records)
    out << r.iter << ',' << r.op_id << ',' << r.kind << ',' << fmt_real(r.grad) << ','
        << fmt_real(r.infidelity) << ',' << fmt_real(r.energy) << ',' << r.params << '\n';
  return out.str();
}

OverlapAdaptResult run_overlap_adapt(const TargetWavefunction& ref,
                                     const std::vector<PoolOperator>& pool, Ansatz init,
                                     const OverlapAdaptOptions& options) {
  if (ref.n_qubits() != init.n_qubits)
    throw std::invalid_argument("target and ansatz qubit counts differ");
  OverlapAdaptResult result;
  result.ansatz = std::move(init);
  Ansatz& ansatz = result.ansatz;
  const Statevector& target = ref.state();

  auto make_record = [&](const Statevector& psi) {
    OverlapRecord r;
    r.infidelity = 1.0 - std::norm(overlap(target, psi));
    r.energy = options.hamiltonian ? expectation(psi, *options.hamiltonian) : kNaN;
    r.params = static_cast<int>(ansatz.size());
    return r;
  };

  Statevector psi = apply_ansatz(ansatz);
  {
    OverlapRecord r = make_record(psi);
    r.kind = "init";
    result.trace.records.push_back(r);
  }

  for (int iter = 1;; ++iter) {
    const auto& last = result.trace.records.back();
    if (options.stop_energy && options.hamiltonian && last.energy <= *options.stop_energy) {
      result.stop_reason = "energy reached target";
      break;
    }
    if (static_cast<int>(ansatz.size()) >= options.p_max) {
      result.stop_reason = "operator budget reached";
      break;
    }
    const auto grads = screen_overlap_gradients(target, psi, pool);
    const int pick = argmax_magnitude(grads);
    if (pick < 0 || grads[pick] < options.gtol_overlap) {
      result.stop_reason = "overlap gradient below threshold";
      break;
    }
    const auto& op = pool[pick];
    ansatz.entries.push_back({op.id, op.excitation, 0.0});

    const Objective objective = [&](std::span<const double> x, std::span<double> grad) {
      auto vg = overlap_and_gradient(ansatz, x, target);
      for (std::size_t k = 0; k < grad.size(); ++k) grad[k] = -vg.gradient[k];
      return 1.0 - vg.value;
    };
    const auto opt = minimize(objective, ansatz.thetas(), options.minimize);
    ansatz.set_thetas(opt.theta_opt);
    psi = apply_ansatz(ansatz);

    OverlapRecord r = make_record(psi);
    r.iter = iter;
    r.op_id = op.id;
    r.kind = op.excitation.kind_name();
    r.grad = grads[pick];
    r.evals = opt.n_evaluations;
    r.optimizer_converged = opt.converged;
    result.trace.records.push_back(r);
  }
  result.infidelity = result.trace.records.back().infidelity;
  return result;
}

PipelineResult pipeline(const MolecularHamiltonian& mol, const OperatorKernel& h,
                        const std::vector<PoolOperator>& pool, const Statevector& target,
                        const PipelineOptions& options) {
  PipelineResult out;
  out.target = target;
  const int nq = mol.n_spin_orbitals;
  Statevector current = target;
  for (int round = 0; round < std::max(1, options.rounds); ++round) {
    Ansatz empty{nq, mol.n_electrons, {}};
    OverlapAdaptOptions ov = options.overlap;
    ov.p_max = options.p_overlap;
    if (!ov.hamiltonian) ov.hamiltonian = &h;
    auto compressed =
        run_overlap_adapt(TargetWavefunction::normalized(current), pool, std::move(empty), ov);

    AdaptOptions ad = options.adapt;
    ad.max_ops = options.p_total;
    auto grown = run_adapt(h, pool, compressed.ansatz, ad);
    current = apply_ansatz(grown.ansatz);
    out.overlap_rounds.push_back(std::move(compressed));
    out.adapt_rounds.push_back(std::move(grown));
  }
  return out;
}

PipelineResult pipeline(const MolecularHamiltonian& mol, const OperatorKernel& h,
                        const std::vector<PoolOperator>& pool, const PipelineOptions& options) {
  const int nq = mol.n_spin_orbitals;
  Statevector target;
  std::optional<double> target_energy;
  std::optional<AdaptResult> target_adapt;
  std::optional<CipsiState> cipsi;
  switch (options.source) {
    case TargetSource::Fci: {
      auto fci = fci_ground_state(mol);
      target = export_statevector(fci.wavefunction, nq);
      target_energy = fci.energy;
      break;
    }
    case TargetSource::Cipsi: {
      cipsi = run_cipsi(mol, options.cipsi);
      target = export_statevector(cipsi->wavefunction(), nq);
      target_energy = cipsi->e_var;
      break;
    }
    case TargetSource::AdaptAnsatz: {
      AdaptOptions ad = options.adapt;
      ad.max_ops = options.p_target;
      target_adapt = run_adapt(h, pool, Ansatz{nq, mol.n_electrons, {}}, ad);
      target = apply_ansatz(target_adapt->ansatz);
      target_energy = target_adapt->energy;
      break;
    }
  }
  PipelineResult out = pipeline(mol, h, pool, target, options);
  out.target_energy = target_energy;
  out.target_adapt = std::move(target_adapt);
  out.cipsi = std::move(cipsi);
  return out;
}

}  // namespace oada
