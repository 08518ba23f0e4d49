#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oada {

/// Raised for any malformed FCIDUMP input. `line()` is 1-based, 0 when the
/// problem is not tied to a single line (e.g. a missing namelist key).
class FcidumpError : public std::runtime_error {
 public:
  FcidumpError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using OrbitalPair = std::array<int, 2>;
using OrbitalQuad = std::array<int, 4>;

/// Integrals exactly as read from an FCIDUMP file: spatial orbitals,
/// chemists' notation, 1-based indices.
struct FcidumpData {
  int norb = 0;
  int nelec = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  /// Keyed by (min, max).
  std::map<OrbitalPair, double> one_body;
  /// Keyed by the smallest of the eight equivalent index tuples.
  std::map<OrbitalQuad, double> two_body;

  /// `# REF_HF=` / `# REF_FCI=` comment lines, when present.
  std::optional<double> ref_hf;
  std::optional<double> ref_fci;

  double one(int i, int j) const;
  double two(int i, int j, int k, int l) const;
  void set_one(int i, int j, double value);
  void set_two(int i, int j, int k, int l, double value);
};

OrbitalQuad canonical_two_body_key(int i, int j, int k, int l);

FcidumpData parse_fcidump(std::string_view text);
FcidumpData read_fcidump(const std::string& path);

/// Serializes with round-trip precision; `parse_fcidump(write_fcidump(d))`
/// reproduces every stored integral bit for bit.
std::string write_fcidump(const FcidumpData& data);

/// Spin-orbital Hamiltonian
///   H = core + sum_pq h_pq a+_p a_q + sum_pqrs h_pqrs a+_p a+_r a_s a_q
/// with interleaved spin orbitals p = 2*(spatial-1) + sigma (alpha = 0).
struct MolecularHamiltonian {
  int n_spin_orbitals = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  std::vector<double> one_body;  // N*N, row-major
  std::vector<double> two_body;  // N^4, index ((p*N+q)*N+r)*N+s

  double h1(int p, int q) const {
    return one_body[static_cast<std::size_t>(p) * n_spin_orbitals + q];
  }
  double h2(int p, int q, int r, int s) const {
    const std::size_t n = n_spin_orbitals;
    return two_body[((p * n + q) * n + r) * n + s];
  }
  /// Spin-orbital electron repulsion integral (pq|rs) = 2 * h2(p, q, r, s).
  double eri(int p, int q, int r, int s) const { return 2.0 * h2(p, q, r, s); }

  int n_alpha() const { return (n_electrons + ms2) / 2; }
  int n_beta() const { return (n_electrons - ms2) / 2; }
};

MolecularHamiltonian to_spin_orbital(const FcidumpData& data);

inline int spin_of(int spin_orbital) { return spin_orbital & 1; }

}  // namespace oada
