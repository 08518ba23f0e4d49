#include "oada/pool.hpp"

#include <sstream>
#include <stdexcept>

#include "oada/fcidump.hpp"

namespace oada {

int cnot_count(ExcitationKind kind) {
  return kind == ExcitationKind::Single ? kSingleCnots : kDoubleCnots;
}

std::vector<PoolOperator> build_pool(int n_spin_orbitals, int n_electrons) {
  if (n_electrons < 0 || n_electrons > n_spin_orbitals)
    throw std::invalid_argument("electron count out of range");
  std::vector<Excitation> singles, doubles;
  const int n = n_spin_orbitals;
  const int occ = n_electrons;
  for (int p = occ; p < n; ++p)
    for (int q = 0; q < occ; ++q)
      if (spin_of(p) == spin_of(q)) singles.push_back(Excitation::single(p, q));
  for (int p = occ; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      for (int r = 0; r < occ; ++r)
        for (int s = r + 1; s < occ; ++s)
          if (spin_of(p) + spin_of(q) == spin_of(r) + spin_of(s))
            doubles.push_back(Excitation::double_(p, q, r, s));

  std::vector<PoolOperator> pool;
  pool.reserve(singles.size() + doubles.size());
  for (const auto* block : {&singles, &doubles})
    for (const auto& e : *block)
      pool.push_back({static_cast<int>(pool.size()), e, cnot_count(e.kind)});
  return pool;
}

std::string dump_pool(const std::vector<PoolOperator>& pool) {
  std::ostringstream out;
  for (const auto& op : pool) {
    const auto& e = op.excitation;
    out << op.id << ' ' << e.kind_name() << ' ' << e.p() << ' ' << e.q();
    if (!e.is_single()) out << ' ' << e.r() << ' ' << e.s();
    out << ' ' << op.cnot_cost << '\n';
  }
  return out.str();
}

}  // namespace oada
