#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oada/excitation.hpp"
#include "oada/fcidump.hpp"

namespace oada {

using Complex = std::complex<double>;

/// Tensor product of single-qubit Paulis in symplectic form: qubit k carries
/// X if only x bit k is set, Z if only z bit k is set, Y if both are set.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  bool is_identity() const { return x == 0 && z == 0; }
  /// Number of Y factors.
  int y_count() const;
  /// "X0 Z1 Y3", or "I" for the identity.
  std::string word() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend bool operator<(const PauliString& a, const PauliString& b) {
    return a.z != b.z ? a.z < b.z : a.x < b.x;
  }
};

/// Product a*b = phase * PauliString.
std::pair<Complex, PauliString> pauli_product(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings on a fixed number of qubits. Terms with
/// |coefficient| < kPruneThreshold are dropped on construction.
class QubitOperator {
 public:
  static constexpr double kPruneThreshold = 1e-14;
  using TermMap = std::map<PauliString, Complex>;

  QubitOperator() = default;
  explicit QubitOperator(int n_qubits);
  QubitOperator(int n_qubits, TermMap terms);

  static QubitOperator identity(int n_qubits, Complex coeff = 1.0);
  static QubitOperator term(int n_qubits, PauliString s, Complex coeff = 1.0);

  int n_qubits() const { return n_qubits_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Complex coefficient(const PauliString& s) const;

  QubitOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;

  QubitOperator operator+(const QubitOperator& other) const;
  QubitOperator operator-(const QubitOperator& other) const;
  QubitOperator operator*(Complex scalar) const;

  /// One term per line: `coeff_re coeff_im pauli-word`.
  std::string dump() const;

 private:
  void prune();
  int n_qubits_ = 0;
  TermMap terms_;
};

QubitOperator multiply(const QubitOperator& a, const QubitOperator& b);
inline QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  return multiply(a, b);
}

/// (prod_{i<p} Z_i) (X_p + i Y_p) / 2.
QubitOperator jw_annihilation(int p, int n_qubits);
QubitOperator jw_creation(int p, int n_qubits);

/// Product of ladder operators, leftmost first.
struct FermionTerm {
  struct Ladder {
    int index;
    bool dagger;
  };
  std::vector<Ladder> ops;
  Complex coeff = 1.0;
};

QubitOperator jw_fermion_term(const FermionTerm& term, int n_qubits);

QubitOperator jw_hamiltonian(const MolecularHamiltonian& h);

/// Qubit (de-)excitation operator Q_p = (X_p + i Y_p) / 2, no parity string.
QubitOperator qubit_lowering(int p, int n_qubits);
QubitOperator qubit_raising(int p, int n_qubits);

/// Anti-hermitian generator T with U(theta) = exp(theta T):
///   single: Q+_p Q_q - Q+_q Q_p
///   double: Q+_p Q+_q Q_r Q_s - Q+_r Q+_s Q_p Q_q
QubitOperator qubit_excitation_generator(const Excitation& e, int n_qubits);

/// Dense 2^N x 2^N matrix, basis index bit k = occupation of qubit k.
/// Intended for small N; throws above 14 qubits.
Eigen::MatrixXcd to_dense(const QubitOperator& op);

}  // namespace oada
