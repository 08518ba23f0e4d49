#pragma once

#include <string>
#include <vector>

#include "oada/excitation.hpp"

namespace oada {

struct PoolOperator {
  int id = 0;
  Excitation excitation;
  int cnot_cost = 0;
};

/// CNOTs in the single / double qubit-excitation evolution circuits.
constexpr int kSingleCnots = 3;
constexpr int kDoubleCnots = 13;

int cnot_count(ExcitationKind kind);

/// Restricted occupied -> virtual qubit excitations with respect to the
/// closed-shell reference (lowest n_electrons spin orbitals occupied).
/// Singles preserve spin; doubles preserve S_z. Doubles are stored with
/// p < q and r < s. Singles come first; each block is in lexicographic order
/// of its index tuple. Ids follow that order.
std::vector<PoolOperator> build_pool(int n_spin_orbitals, int n_electrons);

struct ResourceCount {
  int singles = 0;
  int doubles = 0;
  int cnots() const { return kSingleCnots * singles + kDoubleCnots * doubles; }
};

/// `id kind p q [r s] cnot_cost` per line.
std::string dump_pool(const std::vector<PoolOperator>& pool);

}  // namespace oada
