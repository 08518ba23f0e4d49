#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oada/adapt.hpp"
#include "oada/ci.hpp"
#include "oada/fcidump.hpp"

namespace oada {

/// A normalized target state for overlap maximization.
class TargetWavefunction {
 public:
  /// Throws std::invalid_argument unless ||s|| = 1 within 1e-12.
  explicit TargetWavefunction(Statevector s);
  static TargetWavefunction normalized(Statevector s);

  const Statevector& state() const { return state_; }
  int n_qubits() const { return state_.n_qubits(); }

 private:
  Statevector state_;
};

/// |<ref|T_k|psi>| for every pool operator.
std::vector<double> screen_overlap_gradients(const Statevector& ref, const Statevector& state,
                                             const std::vector<PoolOperator>& pool);

/// Overlap-gradient magnitude from four overlaps at angles +-pi/2, +-pi/3:
/// |1/2 F(-pi/2) - 1/2 F(pi/2) + 2/sqrt3 F(pi/3) - 2/sqrt3 F(-pi/3)| / (2 |<ref|psi>|)
/// with F(t) = |<ref|exp(tT)|psi>|^2. Equal to |<ref|T|psi>| only when
/// conj(<ref|psi>) <ref|T|psi> is real. Throws std::domain_error when
/// |<ref|psi>| < 1e-12.
double four_angle_gradient(const Statevector& ref, const Statevector& state, const Excitation& e);

/// Whether conj(<ref|psi>) <ref|T|psi> is real within `tol`, i.e. whether
/// four_angle_gradient agrees with the direct gradient.
bool overlap_phase_aligned(const Statevector& ref, const Statevector& state, const Excitation& e,
                           double tol = 1e-10);

struct OverlapAdaptOptions {
  int p_max = 50;
  /// Stop when the largest overlap gradient drops below this.
  double gtol_overlap = 1e-7;
  MinimizeOptions minimize;
  /// Optional energy column and energy-based stop.
  const OperatorKernel* hamiltonian = nullptr;
  std::optional<double> stop_energy;
};

struct OverlapRecord {
  int iter = 0;
  int op_id = -1;
  std::string kind;
  double grad = 0.0;
  double infidelity = 0.0;
  double energy = 0.0;  // NaN without a Hamiltonian
  int params = 0;
  int evals = 0;
  bool optimizer_converged = true;
};

struct OverlapTrace {
  std::vector<OverlapRecord> records;
  /// `iter,op_id,kind,grad,infidelity,energy,params`
  std::string to_csv() const;
};

struct OverlapAdaptResult {
  Ansatz ansatz;
  OverlapTrace trace;
  double infidelity = 1.0;
  std::string stop_reason;
};

/// Grows an ansatz by maximizing |<ref|psi>|^2 instead of minimizing energy.
OverlapAdaptResult run_overlap_adapt(const TargetWavefunction& ref,
                                     const std::vector<PoolOperator>& pool, Ansatz init,
                                     const OverlapAdaptOptions& options = {});

enum class TargetSource { Fci, Cipsi, AdaptAnsatz };

struct PipelineOptions {
  TargetSource source = TargetSource::Fci;
  /// Operators grown by overlap maximization in each round.
  int p_overlap = 20;
  /// Total budget for the final energy-driven ansatz.
  int p_total = 50;
  /// Size of the ADAPT ansatz used as target with TargetSource::AdaptAnsatz.
  int p_target = 50;
  /// Compression rounds; each later round targets the previous result.
  int rounds = 1;
  AdaptOptions adapt;
  OverlapAdaptOptions overlap;
  CipsiOptions cipsi;
};

struct PipelineResult {
  Statevector target;
  std::optional<double> target_energy;
  std::optional<AdaptResult> target_adapt;
  std::optional<CipsiState> cipsi;
  std::vector<OverlapAdaptResult> overlap_rounds;
  std::vector<AdaptResult> adapt_rounds;

  const AdaptResult& last() const { return adapt_rounds.back(); }
  const AdaptTrace& trace() const { return adapt_rounds.back().trace; }
};

/// Overlap-ADAPT toward a target, then energy-driven ADAPT from the
/// compressed ansatz up to p_total operators.
PipelineResult pipeline(const MolecularHamiltonian& mol, const OperatorKernel& h,
                        const std::vector<PoolOperator>& pool, const PipelineOptions& options);

/// Pipeline from an explicit target state.
PipelineResult pipeline(const MolecularHamiltonian& mol, const OperatorKernel& h,
                        const std::vector<PoolOperator>& pool, const Statevector& target,
                        const PipelineOptions& options);

}  // namespace oada
