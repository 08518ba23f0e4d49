#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oada/optimizer.hpp"
#include "oada/pool.hpp"
#include "oada/statevector.hpp"

namespace oada {

struct AdaptOptions {
  /// Stop when the largest screening gradient magnitude drops below eps.
  double eps = 1e-3;
  /// Total operator budget, counting operators already in the initial ansatz.
  int max_ops = 50;
  MinimizeOptions minimize;
  /// Exact ground energy, for the error column.
  std::optional<double> e_fci;
  /// When set, each record also carries 1 - |<monitor|psi>|^2.
  const Statevector* monitor = nullptr;
};

struct AdaptRecord {
  int iter = 0;
  int op_id = -1;  // -1 on the initial row
  std::string kind;
  double grad = 0.0;
  double energy = 0.0;
  double error_vs_fci = 0.0;  // NaN without a reference energy
  int params = 0;
  int cnots = 0;
  int evals = 0;
  bool optimizer_converged = true;
  double infidelity = 0.0;  // NaN without a monitor state
};

struct AdaptTrace {
  std::vector<AdaptRecord> records;
  /// `iter,op_id,kind,grad,energy,error_vs_fci,params,cnots,evals`
  std::string to_csv() const;
};

struct AdaptResult {
  Ansatz ansatz;
  AdaptTrace trace;
  double energy = 0.0;
  std::string stop_reason;
};

ResourceCount count_resources(const Ansatz& a);

/// g_k = <psi|[H, T_k]|psi> = 2 Re <H psi|T_k psi> for every pool operator,
/// sharing one application of H.
std::vector<double> screen_energy_gradients(const Statevector& state, const OperatorKernel& h,
                                            const std::vector<PoolOperator>& pool);

/// Index of the largest |g|; the lowest index wins ties. -1 for empty input.
int argmax_magnitude(const std::vector<double>& g);

/// QEB-ADAPT-VQE: screen, append the best operator at angle 0, re-optimize
/// every angle from the previous optimum, repeat.
AdaptResult run_adapt(const OperatorKernel& h, const std::vector<PoolOperator>& pool, Ansatz init,
                      const AdaptOptions& options = {});

}  // namespace oada
