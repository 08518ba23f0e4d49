#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "oada/adapt.hpp"
#include "oada/ci.hpp"
#include "oada/fcidump.hpp"

namespace oada {

namespace {

struct Report {
  int failures = 0;
  void check(bool ok, const char* name, double measured) {
    std::printf("%-4s %-40s %.3e\n", ok ? "ok" : "FAIL", name, measured);
    failures += !ok;
  }
};

Statevector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Statevector s(n);
  for (std::size_t i = 0; i < s.dim(); ++i) s[i] = {g(rng), g(rng)};
  s.normalize();
  return s;
}

}  // namespace

int verify_fixture(const std::string& path, unsigned seed) {
  Report r;
  std::mt19937_64 rng(seed);
  const FcidumpData data = read_fcidump(path);
  const MolecularHamiltonian mol = to_spin_orbital(data);
  const int nq = mol.n_spin_orbitals;
  const QubitOperator hq = jw_hamiltonian(mol);
  const OperatorKernel h(hq);

  r.check(hq.is_hermitian(), "hamiltonian is hermitian", 0.0);

  const Sector sector = sector_of(mol);
  const auto dets = sector_determinants(sector);
  if (dets.size() <= 2000) {
    double worst = 0.0;
    for (const auto& j : dets) {
      const Statevector col = h.apply(Statevector::basis_state(nq, j.bits));
      double in_sector = 0.0;
      for (const auto& i : dets) {
        worst = std::max(worst, std::abs(col[i.bits] - slater_condon(mol, i, j)));
        in_sector += std::norm(col[i.bits]);
      }
      worst = std::max(worst, std::abs(std::sqrt(in_sector) - col.norm()));
    }
    r.check(worst < 1e-10, "JW matrix equals Slater-Condon matrix", worst);
  }

  const double e_hf = expectation(prepare_hf(nq, mol.n_electrons), h);
  if (data.ref_hf) r.check(std::abs(e_hf - *data.ref_hf) < 1e-8, "HF energy matches REF_HF",
                           std::abs(e_hf - *data.ref_hf));
  const FciResult fci = fci_ground_state(mol, sector);
  if (data.ref_fci) r.check(std::abs(fci.energy - *data.ref_fci) < 1e-8,
                            "FCI energy matches REF_FCI", std::abs(fci.energy - *data.ref_fci));
  r.check(fci.energy <= e_hf + 1e-10, "FCI below HF", e_hf - fci.energy);

  const auto pool = build_pool(nq, mol.n_electrons);
  {
    const Statevector a = random_state(nq, rng);
    const Statevector b = random_state(nq, rng);
    double cube = 0.0, skew = 0.0;
    for (const auto& op : pool) {
      const auto& e = op.excitation;
      const Statevector t1 = apply_generator(a, e);
      const Statevector t3 = apply_generator(apply_generator(t1, e), e);
      for (std::size_t i = 0; i < a.dim(); ++i) cube = std::max(cube, std::abs(t3[i] + t1[i]));
      skew = std::max(skew, std::abs(overlap(a, apply_generator(b, e)) +
                                     overlap(apply_generator(a, e), b)));
    }
    r.check(cube < 1e-12, "pool generators satisfy T^3 = -T", cube);
    r.check(skew < 1e-12, "pool generators are anti-hermitian", skew);
  }

  {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_real_distribution<double> angle(-1.0, 1.0);
    Ansatz a{nq, mol.n_electrons, {}};
    for (int k = 0; k < 6 && !pool.empty(); ++k) {
      const auto& op = pool[pick(rng)];
      a.entries.push_back({op.id, op.excitation, angle(rng)});
    }
    const Statevector target = export_statevector(fci.wavefunction, nq);
    const auto ve = energy_and_gradient(a, h);
    const auto vo = overlap_and_gradient(a, target);
    double err_e = 0.0, err_o = 0.0;
    const double step = 1e-5;
    for (std::size_t k = 0; k < a.size(); ++k) {
      auto plus = a.thetas(), minus = a.thetas();
      plus[k] += step;
      minus[k] -= step;
      const double fd_e = (expectation(apply_ansatz(a, plus), h) -
                           expectation(apply_ansatz(a, minus), h)) / (2 * step);
      const double fd_o = (std::norm(overlap(target, apply_ansatz(a, plus))) -
                           std::norm(overlap(target, apply_ansatz(a, minus)))) / (2 * step);
      err_e = std::max(err_e, std::abs(fd_e - ve.gradient[k]));
      err_o = std::max(err_o, std::abs(fd_o - vo.gradient[k]));
    }
    r.check(err_e < 1e-6, "energy gradient matches finite differences", err_e);
    r.check(err_o < 1e-6, "overlap gradient matches finite differences", err_o);
  }

  std::printf("%d failure(s)\n", r.failures);
  return r.failures;
}

}  // namespace oada
