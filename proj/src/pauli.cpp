#include "oada/pauli.hpp"

#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace oada {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_index(int p, int n_qubits) {
  if (p < 0 || p >= n_qubits)
    throw std::out_of_range("qubit index " + std::to_string(p) + " out of range [0, " +
                            std::to_string(n_qubits) + ")");
}

void accumulate_product(QubitOperator::TermMap& acc, const QubitOperator& a,
                        const QubitOperator& b, Complex scale) {
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, s] = pauli_product(sa, sb);
      acc[s] += scale * phase * ca * cb;
    }
}

}  // namespace

int PauliString::y_count() const { return std::popcount(x & z); }

std::string PauliString::word() const {
  if (is_identity()) return "I";
  std::string out;
  const std::uint64_t support = x | z;
  for (int k = 0; k < 64; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    if (!(support & bit)) continue;
    if (!out.empty()) out += ' ';
    out += (x & bit) ? ((z & bit) ? 'Y' : 'X') : 'Z';
    out += std::to_string(k);
  }
  return out;
}

std::pair<Complex, PauliString> pauli_product(const PauliString& a, const PauliString& b) {
  // P = i^{ny} X^x Z^z, and Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1}.
  const PauliString c{a.x ^ b.x, a.z ^ b.z};
  int power = a.y_count() + b.y_count() - c.y_count();
  power += 2 * (std::popcount(a.z & b.x) & 1);
  return {kIPowers[((power % 4) + 4) % 4], c};
}

QubitOperator::QubitOperator(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 64) throw std::invalid_argument("qubit count out of range");
}

QubitOperator::QubitOperator(int n_qubits, TermMap terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  if (n_qubits < 0 || n_qubits > 64) throw std::invalid_argument("qubit count out of range");
  const std::uint64_t allowed = n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
  for (const auto& [s, c] : terms_)
    if ((s.x | s.z) & ~allowed) throw std::out_of_range("Pauli string exceeds qubit count");
  prune();
}

QubitOperator QubitOperator::identity(int n_qubits, Complex coeff) {
  return term(n_qubits, PauliString{}, coeff);
}

QubitOperator QubitOperator::term(int n_qubits, PauliString s, Complex coeff) {
  return QubitOperator(n_qubits, TermMap{{s, coeff}});
}

void QubitOperator::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

Complex QubitOperator::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex{} : it->second;
}

QubitOperator QubitOperator::adjoint() const {
  TermMap out;
  for (const auto& [s, c] : terms_) out.emplace(s, std::conj(c));
  return QubitOperator(n_qubits_, std::move(out));
}

bool QubitOperator::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

bool QubitOperator::is_anti_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.real()) > tol) return false;
  return true;
}

QubitOperator QubitOperator::operator+(const QubitOperator& other) const {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("qubit-count mismatch");
  TermMap out = terms_;
  for (const auto& [s, c] : other.terms_) out[s] += c;
  return QubitOperator(n_qubits_, std::move(out));
}

QubitOperator QubitOperator::operator-(const QubitOperator& other) const {
  return *this + other * Complex(-1.0);
}

QubitOperator QubitOperator::operator*(Complex scalar) const {
  TermMap out;
  for (const auto& [s, c] : terms_) out.emplace(s, c * scalar);
  return QubitOperator(n_qubits_, std::move(out));
}

std::string QubitOperator::dump() const {
  std::ostringstream out;
  char buf[80];
  for (const auto& [s, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", c.real(), c.imag());
    out << buf << s.word() << '\n';
  }
  return out.str();
}

QubitOperator multiply(const QubitOperator& a, const QubitOperator& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("qubit-count mismatch");
  QubitOperator::TermMap acc;
  accumulate_product(acc, a, b, 1.0);
  return QubitOperator(a.n_qubits(), std::move(acc));
}

QubitOperator qubit_lowering(int p, int n_qubits) {
  check_index(p, n_qubits);
  const std::uint64_t bit = std::uint64_t{1} << p;
  return QubitOperator(n_qubits, {{PauliString{bit, 0}, 0.5}, {PauliString{bit, bit}, Complex(0, 0.5)}});
}

QubitOperator qubit_raising(int p, int n_qubits) { return qubit_lowering(p, n_qubits).adjoint(); }

QubitOperator jw_annihilation(int p, int n_qubits) {
  check_index(p, n_qubits);
  const std::uint64_t bit = std::uint64_t{1} << p;
  const std::uint64_t parity = bit - 1;
  return QubitOperator(n_qubits, {{PauliString{bit, parity}, 0.5},
                                  {PauliString{bit, parity | bit}, Complex(0, 0.5)}});
}

QubitOperator jw_creation(int p, int n_qubits) { return jw_annihilation(p, n_qubits).adjoint(); }

QubitOperator jw_fermion_term(const FermionTerm& term, int n_qubits) {
  QubitOperator out = QubitOperator::identity(n_qubits, term.coeff);
  for (const auto& op : term.ops)
    out = multiply(out, op.dagger ? jw_creation(op.index, n_qubits)
                                  : jw_annihilation(op.index, n_qubits));
  return out;
}

QubitOperator jw_hamiltonian(const MolecularHamiltonian& h) {
  const int n = h.n_spin_orbitals;
  std::vector<QubitOperator> lower, raise;
  for (int p = 0; p < n; ++p) {
    lower.push_back(jw_annihilation(p, n));
    raise.push_back(jw_creation(p, n));
  }
  QubitOperator::TermMap acc;
  acc[PauliString{}] += h.core_energy;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (const double v = h.h1(p, q); v != 0.0) accumulate_product(acc, raise[p], lower[q], v);

  // a+_p a+_r a_s a_q = (a+_p a+_r)(a_s a_q)
  std::vector<QubitOperator> create_pair(static_cast<std::size_t>(n) * n);
  std::vector<QubitOperator> annihilate_pair(static_cast<std::size_t>(n) * n);
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < n; ++r) {
      if (p == r) continue;
      create_pair[p * n + r] = multiply(raise[p], raise[r]);
      annihilate_pair[p * n + r] = multiply(lower[p], lower[r]);
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        if (r == p) continue;
        for (int s = 0; s < n; ++s) {
          if (s == q) continue;
          const double v = h.h2(p, q, r, s);
          if (v == 0.0) continue;
          accumulate_product(acc, create_pair[p * n + r], annihilate_pair[s * n + q], v);
        }
      }
  return QubitOperator(n, std::move(acc));
}

QubitOperator qubit_excitation_generator(const Excitation& e, int n_qubits) {
  if (e.max_index() >= n_qubits) throw std::out_of_range("excitation index exceeds qubit count");
  auto up = [&](int k) { return qubit_raising(k, n_qubits); };
  auto down = [&](int k) { return qubit_lowering(k, n_qubits); };
  if (e.is_single()) return up(e.p()) * down(e.q()) - up(e.q()) * down(e.p());
  return up(e.p()) * up(e.q()) * down(e.r()) * down(e.s()) -
         up(e.r()) * up(e.s()) * down(e.p()) * down(e.q());
}

Eigen::MatrixXcd to_dense(const QubitOperator& op) {
  const int n = op.n_qubits();
  if (n > 14) throw std::invalid_argument("dense realization limited to 14 qubits");
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : op.terms()) {
    const Complex base = c * kIPowers[s.y_count() % 4];
    for (std::size_t col = 0; col < dim; ++col) {
      const double sign = (std::popcount(col & s.z) & 1) ? -1.0 : 1.0;
      m(col ^ s.x, col) += sign * base;
    }
  }
  return m;
}

}  // namespace oada
