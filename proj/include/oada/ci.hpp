#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "oada/fcidump.hpp"
#include "oada/statevector.hpp"

namespace oada {

/// Slater determinant as an interleaved spin-orbital occupation mask
/// (bit 2k = alpha of spatial orbital k, bit 2k+1 = beta). The state is
/// a+_{p1} a+_{p2} ... |vac> with p1 < p2 < ..., matching the Jordan-Wigner
/// basis state of the same bit pattern.
struct Determinant {
  std::uint64_t bits = 0;

  static Determinant from_spatial(std::uint64_t alpha, std::uint64_t beta);
  std::uint64_t alpha_mask() const;
  std::uint64_t beta_mask() const;
  int n_electrons() const;

  friend auto operator<=>(const Determinant&, const Determinant&) = default;
};

struct Sector {
  int n_spatial = 0;
  int n_alpha = 0;
  int n_beta = 0;
};

Sector sector_of(const MolecularHamiltonian& h);

/// All determinants of the sector in increasing bit order.
std::vector<Determinant> sector_determinants(const Sector& sector);

/// Number of spin orbitals in which I and J differ, halved.
int excitation_degree(Determinant a, Determinant b);

/// <I|H|J> by the Slater-Condon rules.
double slater_condon(const MolecularHamiltonian& h, Determinant a, Determinant b);

/// Calls f(J) for every determinant reachable from I by a single or double
/// excitation that preserves the number of alpha and beta electrons.
template <typename F>
void for_each_connected(Determinant det, int n_spin_orbitals, F&& f);

struct DeterminantWavefunction {
  std::map<Determinant, double> coeffs;
  double energy = 0.0;  // variational energy E_v

  double norm() const;
  void normalize();
};

/// Sparse symmetric CI matrix over `dets` (in that order).
Eigen::SparseMatrix<double> ci_hamiltonian(const MolecularHamiltonian& h,
                                           const std::vector<Determinant>& dets);

struct EigenOptions {
  std::size_t dense_threshold = 2000;
  double residual_tol = 1e-9;
  int max_iterations = 2000;
  int max_subspace = 20;
  bool force_davidson = false;
};

struct GroundState {
  double eigenvalue = 0.0;
  Eigen::VectorXd vector;
  bool davidson = false;
  int iterations = 0;
};

/// Lowest eigenpair of a symmetric matrix: dense below the threshold,
/// otherwise Davidson with a diagonal preconditioner.
GroundState lowest_eigenpair(const Eigen::SparseMatrix<double>& m, const EigenOptions& opt = {});

struct FciOptions : EigenOptions {
  std::size_t dimension_cap = 2'000'000;
};

struct FciResult {
  double energy = 0.0;
  DeterminantWavefunction wavefunction;
  std::size_t dimension = 0;
  bool davidson = false;
};

FciResult fci_ground_state(const MolecularHamiltonian& h, const Sector& sector,
                           const FciOptions& opt = {});
FciResult fci_ground_state(const MolecularHamiltonian& h, const FciOptions& opt = {});

struct CipsiState {
  std::vector<Determinant> reference;  // increasing bit order
  std::vector<double> coeffs;
  double e_var = 0.0;
  double e_pt2 = 0.0;
  int iteration = 0;
  /// Determinants whose Epstein-Nesbet denominator vanished when they were
  /// selected.
  std::vector<Determinant> intruders;

  double e_cipsi() const { return e_var + e_pt2; }
  DeterminantWavefunction wavefunction() const;
};

struct Pt2Contribution {
  Determinant det;
  double coupling = 0.0;      // <Psi0|H|kappa>
  double denominator = 0.0;   // E_v - <kappa|H|kappa>
  double energy = 0.0;        // e_kappa
};

/// Epstein-Nesbet second-order contributions of every external determinant
/// connected to the reference, in increasing bit order.
std::vector<Pt2Contribution> en_pt2(const MolecularHamiltonian& h,
                                    const std::vector<Determinant>& reference,
                                    const std::vector<double>& coeffs, double e_var);

constexpr double kIntruderThreshold = 1e-10;

/// Reference space {HF} with its energy and PT2 correction.
CipsiState cipsi_initial_state(const MolecularHamiltonian& h, const EigenOptions& opt = {});

/// One selection step: add the largest-|e_kappa| external determinants until
/// the reference doubles (or reaches max_dets), rediagonalize, refresh E2.
CipsiState cipsi_iterate(const CipsiState& state, const MolecularHamiltonian& h,
                         std::size_t max_dets = std::numeric_limits<std::size_t>::max(),
                         const EigenOptions& opt = {});

struct CipsiOptions {
  double target_e2 = 0.0;
  std::size_t max_dets = std::numeric_limits<std::size_t>::max();
  int max_iterations = 64;
  EigenOptions eigen;
};

/// Iterates from {HF} until |E2| <= target_e2 or |R| >= max_dets. `history`,
/// when given, receives every state including the initial one.
CipsiState run_cipsi(const MolecularHamiltonian& h, const CipsiOptions& opt,
                     std::vector<CipsiState>* history = nullptr);

/// Writes each coefficient at its bit-pattern index and normalizes.
Statevector export_statevector(const DeterminantWavefunction& w, int n_qubits);

/// Text format: a `norb <n> nelec <n>` header, then
/// `coeff alpha_mask_hex beta_mask_hex` per line. '#' lines are comments.
std::string write_determinants(const DeterminantWavefunction& w, int norb, int nelec);
DeterminantWavefunction read_determinants(const std::string& text, int* norb = nullptr,
                                          int* nelec = nullptr);

// ---------------------------------------------------------------------------

template <typename F>
void for_each_connected(Determinant det, int n_spin_orbitals, F&& f) {
  std::vector<int> occ, vir;
  for (int p = 0; p < n_spin_orbitals; ++p)
    ((det.bits >> p) & 1 ? occ : vir).push_back(p);
  const auto bit = [](int p) { return std::uint64_t{1} << p; };
  for (int i : occ)
    for (int a : vir)
      if ((i & 1) == (a & 1)) f(Determinant{det.bits ^ bit(i) ^ bit(a)});
  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y) {
      const int i = occ[x], j = occ[y];
      for (std::size_t u = 0; u < vir.size(); ++u)
        for (std::size_t v = u + 1; v < vir.size(); ++v) {
          const int a = vir[u], b = vir[v];
          if ((i & 1) + (j & 1) != (a & 1) + (b & 1)) continue;
          f(Determinant{det.bits ^ bit(i) ^ bit(j) ^ bit(a) ^ bit(b)});
        }
    }
}

}  // namespace oada
