#include "oada/ci.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace oada {

namespace {

std::uint64_t spread_bits(std::uint64_t spatial, int offset) {
  std::uint64_t out = 0;
  for (int k = 0; spatial; ++k, spatial >>= 1)
    if (spatial & 1) out |= std::uint64_t{1} << (2 * k + offset);
  return out;
}

std::uint64_t gather_bits(std::uint64_t bits, int offset) {
  std::uint64_t out = 0;
  bits >>= offset;
  for (int k = 0; bits; ++k, bits >>= 2)
    if (bits & 1) out |= std::uint64_t{1} << k;
  return out;
}

// Applies a ladder operator with the Jordan-Wigner parity sign. Returns false
// when the operator annihilates the state.
bool apply_ladder(std::uint64_t& bits, int p, bool dagger, int& sign) {
  const std::uint64_t bit = std::uint64_t{1} << p;
  if (static_cast<bool>(bits & bit) == dagger) return false;
  if (std::popcount(bits & (bit - 1)) & 1) sign = -sign;
  bits ^= bit;
  return true;
}

std::vector<int> occupied(std::uint64_t bits) {
  std::vector<int> out;
  for (int p = 0; bits; ++p, bits >>= 1)
    if (bits & 1) out.push_back(p);
  return out;
}

double diagonal_element(const MolecularHamiltonian& h, Determinant d) {
  const auto occ = occupied(d.bits);
  double e = h.core_energy;
  for (std::size_t x = 0; x < occ.size(); ++x) {
    const int k = occ[x];
    e += h.h1(k, k);
    for (std::size_t y = x + 1; y < occ.size(); ++y) {
      const int l = occ[y];
      e += h.eri(k, k, l, l) - h.eri(k, l, l, k);
    }
  }
  return e;
}

}  // namespace

Determinant Determinant::from_spatial(std::uint64_t alpha, std::uint64_t beta) {
  if ((alpha | beta) >> 32) throw std::out_of_range("at most 32 spatial orbitals");
  return {spread_bits(alpha, 0) | spread_bits(beta, 1)};
}

std::uint64_t Determinant::alpha_mask() const { return gather_bits(bits, 0); }
std::uint64_t Determinant::beta_mask() const { return gather_bits(bits, 1); }
int Determinant::n_electrons() const { return std::popcount(bits); }

Sector sector_of(const MolecularHamiltonian& h) {
  return {h.n_spin_orbitals / 2, h.n_alpha(), h.n_beta()};
}

std::vector<Determinant> sector_determinants(const Sector& sector) {
  auto strings = [&](int count) {
    std::vector<std::uint64_t> out;
    if (count < 0 || count > sector.n_spatial) return out;
    std::uint64_t v = (std::uint64_t{1} << count) - 1;
    const std::uint64_t limit = std::uint64_t{1} << sector.n_spatial;
    if (count == 0) return std::vector<std::uint64_t>{0};
    while (v < limit) {
      out.push_back(v);
      // Next bit permutation with the same popcount.
      const std::uint64_t t = v | (v - 1);
      v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
  };
  std::vector<Determinant> dets;
  for (auto a : strings(sector.n_alpha))
    for (auto b : strings(sector.n_beta)) dets.push_back(Determinant::from_spatial(a, b));
  std::sort(dets.begin(), dets.end());
  return dets;
}

int excitation_degree(Determinant a, Determinant b) { return std::popcount(a.bits ^ b.bits) / 2; }

double slater_condon(const MolecularHamiltonian& h, Determinant a, Determinant b) {
  if (a.n_electrons() != b.n_electrons()) return 0.0;
  const std::uint64_t diff = a.bits ^ b.bits;
  const int degree = std::popcount(diff) / 2;
  if (degree == 0) return diagonal_element(h, a);
  if (degree > 2) return 0.0;
  // Holes in `a`, particles in `b`; <b|H|a>, which equals <a|H|b>.
  const auto holes = occupied(diff & a.bits);
  const auto parts = occupied(diff & b.bits);
  int sign = 1;
  std::uint64_t bits = a.bits;
  if (degree == 1) {
    const int i = holes[0], p = parts[0];
    apply_ladder(bits, i, false, sign);
    apply_ladder(bits, p, true, sign);
    double v = h.h1(p, i);
    for (int k : occupied(a.bits & b.bits)) v += h.eri(p, i, k, k) - h.eri(p, k, k, i);
    return sign * v;
  }
  const int i = holes[0], j = holes[1], p = parts[0], q = parts[1];
  // <b| a+_p a+_q a_j a_i |a>
  apply_ladder(bits, i, false, sign);
  apply_ladder(bits, j, false, sign);
  apply_ladder(bits, q, true, sign);
  apply_ladder(bits, p, true, sign);
  return sign * (h.eri(p, i, q, j) - h.eri(p, j, q, i));
}

double DeterminantWavefunction::norm() const {
  double acc = 0.0;
  for (const auto& [d, c] : coeffs) acc += c * c;
  return std::sqrt(acc);
}

void DeterminantWavefunction::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize an empty wavefunction");
  for (auto& [d, c] : coeffs) c /= n;
}

Eigen::SparseMatrix<double> ci_hamiltonian(const MolecularHamiltonian& h,
                                           const std::vector<Determinant>& dets) {
  const std::size_t dim = dets.size();
  std::vector<Eigen::Triplet<double>> triplets;
  auto add = [&](std::size_t r, std::size_t c, double v) {
    if (v == 0.0) return;
    triplets.emplace_back(r, c, v);
    if (r != c) triplets.emplace_back(c, r, v);
  };
  // Pairwise scan is cheaper than connectivity enumeration for small spaces.
  if (dim <= 2000) {
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = r; c < dim; ++c)
        if (excitation_degree(dets[r], dets[c]) <= 2) add(r, c, slater_condon(h, dets[r], dets[c]));
  } else {
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(dim * 2);
    for (std::size_t k = 0; k < dim; ++k) index.emplace(dets[k].bits, k);
    for (std::size_t r = 0; r < dim; ++r) {
      add(r, r, slater_condon(h, dets[r], dets[r]));
      for_each_connected(dets[r], h.n_spin_orbitals, [&](Determinant j) {
        auto it = index.find(j.bits);
        if (it != index.end() && it->second > r) add(r, it->second, slater_condon(h, dets[r], j));
      });
    }
  }
  Eigen::SparseMatrix<double> m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

namespace {

GroundState dense_lowest(const Eigen::SparseMatrix<double>& m) {
  Eigen::MatrixXd dense(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  GroundState gs;
  gs.eigenvalue = solver.eigenvalues()[0];
  gs.vector = solver.eigenvectors().col(0);
  return gs;
}

GroundState davidson(const Eigen::SparseMatrix<double>& m, const EigenOptions& opt) {
  const Eigen::Index n = m.rows();
  const Eigen::VectorXd diag = m.diagonal();
  Eigen::Index start = 0;
  diag.minCoeff(&start);

  Eigen::MatrixXd basis(n, 0), sigma(n, 0);
  auto append = [&](Eigen::VectorXd v) {
    // Two Gram-Schmidt passes.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < basis.cols(); ++k) v -= basis.col(k).dot(v) * basis.col(k);
    const double nv = v.norm();
    if (nv < 1e-14) return false;
    v /= nv;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    sigma.conservativeResize(Eigen::NoChange, sigma.cols() + 1);
    basis.col(basis.cols() - 1) = v;
    sigma.col(sigma.cols() - 1) = m * v;
    return true;
  };
  append(Eigen::VectorXd::Unit(n, start));

  GroundState gs;
  gs.davidson = true;
  for (int it = 0; it < opt.max_iterations; ++it) {
    gs.iterations = it + 1;
    const Eigen::MatrixXd sub = basis.transpose() * sigma;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (sub + sub.transpose()));
    const double theta = solver.eigenvalues()[0];
    const Eigen::VectorXd y = solver.eigenvectors().col(0);
    Eigen::VectorXd x = basis * y;
    const Eigen::VectorXd r = sigma * y - theta * x;
    gs.eigenvalue = theta;
    gs.vector = x;
    if (r.norm() <= opt.residual_tol) return gs;

    Eigen::VectorXd t(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      double denom = theta - diag[k];
      if (std::abs(denom) < 1e-8) denom = std::copysign(1e-8, denom);
      t[k] = r[k] / denom;
    }
    if (basis.cols() >= opt.max_subspace) {
      const Eigen::VectorXd sx = sigma * y;
      basis = x.normalized();
      sigma = sx / x.norm();
    }
    if (!append(t) && !append(r)) return gs;
  }
  throw std::runtime_error("Davidson did not converge");
}

}  // namespace

GroundState lowest_eigenpair(const Eigen::SparseMatrix<double>& m, const EigenOptions& opt) {
  if (m.rows() == 0) throw std::invalid_argument("empty matrix");
  if (!opt.force_davidson && static_cast<std::size_t>(m.rows()) <= opt.dense_threshold)
    return dense_lowest(m);
  return davidson(m, opt);
}

namespace {

// Fixes the overall sign so the largest-magnitude coefficient is positive.
void fix_phase(Eigen::VectorXd& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v[k] < 0) v = -v;
}

void check_closed_shell_reference(const MolecularHamiltonian& h) {
  const Determinant hf{hf_occupation(h.n_electrons)};
  if (std::popcount(hf.alpha_mask()) != h.n_alpha() || std::popcount(hf.beta_mask()) != h.n_beta())
    throw std::invalid_argument("reference determinant does not lie in the MS2 sector");
}

}  // namespace

FciResult fci_ground_state(const MolecularHamiltonian& h, const Sector& sector,
                           const FciOptions& opt) {
  const auto dets = sector_determinants(sector);
  if (dets.size() > opt.dimension_cap)
    throw std::length_error("FCI dimension " + std::to_string(dets.size()) + " exceeds cap " +
                            std::to_string(opt.dimension_cap));
  if (dets.empty()) throw std::invalid_argument("empty FCI sector");
  auto gs = lowest_eigenpair(ci_hamiltonian(h, dets), opt);
  fix_phase(gs.vector);
  FciResult out;
  out.energy = gs.eigenvalue;
  out.dimension = dets.size();
  out.davidson = gs.davidson;
  out.wavefunction.energy = gs.eigenvalue;
  for (std::size_t k = 0; k < dets.size(); ++k)
    if (gs.vector[k] != 0.0) out.wavefunction.coeffs.emplace(dets[k], gs.vector[k]);
  out.wavefunction.normalize();
  return out;
}

FciResult fci_ground_state(const MolecularHamiltonian& h, const FciOptions& opt) {
  return fci_ground_state(h, sector_of(h), opt);
}

DeterminantWavefunction CipsiState::wavefunction() const {
  DeterminantWavefunction w;
  w.energy = e_var;
  for (std::size_t k = 0; k < reference.size(); ++k) w.coeffs.emplace(reference[k], coeffs[k]);
  w.normalize();
  return w;
}

std::vector<Pt2Contribution> en_pt2(const MolecularHamiltonian& h,
                                    const std::vector<Determinant>& reference,
                                    const std::vector<double>& coeffs, double e_var) {
  std::unordered_map<std::uint64_t, bool> in_reference;
  for (const auto& d : reference) in_reference.emplace(d.bits, true);
  std::unordered_map<std::uint64_t, double> coupling;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    const Determinant det = reference[k];
    const double c = coeffs[k];
    for_each_connected(det, h.n_spin_orbitals, [&](Determinant ext) {
      if (in_reference.count(ext.bits)) return;
      coupling[ext.bits] += c * slater_condon(h, ext, det);
    });
  }
  std::vector<Pt2Contribution> out;
  out.reserve(coupling.size());
  for (const auto& [bits, v] : coupling) {
    Pt2Contribution c;
    c.det = Determinant{bits};
    c.coupling = v;
    c.denominator = e_var - slater_condon(h, c.det, c.det);
    c.energy = std::abs(c.denominator) < kIntruderThreshold ? 0.0 : v * v / c.denominator;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.det < b.det; });
  return out;
}

namespace {

double sum_pt2(const std::vector<Pt2Contribution>& contributions) {
  double e2 = 0.0;
  for (const auto& c : contributions) e2 += c.energy;
  return e2;
}

void diagonalize_reference(CipsiState& state, const MolecularHamiltonian& h,
                           const EigenOptions& opt) {
  auto gs = lowest_eigenpair(ci_hamiltonian(h, state.reference), opt);
  fix_phase(gs.vector);
  state.e_var = gs.eigenvalue;
  state.coeffs.assign(gs.vector.data(), gs.vector.data() + gs.vector.size());
}

}  // namespace

CipsiState cipsi_initial_state(const MolecularHamiltonian& h, const EigenOptions& opt) {
  check_closed_shell_reference(h);
  CipsiState state;
  state.reference = {Determinant{hf_occupation(h.n_electrons)}};
  diagonalize_reference(state, h, opt);
  state.e_pt2 = sum_pt2(en_pt2(h, state.reference, state.coeffs, state.e_var));
  return state;
}

CipsiState cipsi_iterate(const CipsiState& state, const MolecularHamiltonian& h,
                         std::size_t max_dets, const EigenOptions& opt) {
  auto contributions = en_pt2(h, state.reference, state.coeffs, state.e_var);
  const std::size_t current = state.reference.size();
  std::size_t budget = std::min(current, contributions.size());
  if (max_dets > current) budget = std::min(budget, max_dets - current);
  else budget = 0;

  CipsiState next;
  next.iteration = state.iteration + 1;
  next.intruders = state.intruders;
  // Intruders first, then decreasing |e_kappa|; ties by bit order (stable sort
  // over the bit-ordered list).
  std::stable_sort(contributions.begin(), contributions.end(), [](const auto& a, const auto& b) {
    const bool ia = std::abs(a.denominator) < kIntruderThreshold;
    const bool ib = std::abs(b.denominator) < kIntruderThreshold;
    if (ia != ib) return ia;
    return std::abs(a.energy) > std::abs(b.energy);
  });
  next.reference = state.reference;
  for (std::size_t k = 0; k < budget; ++k) {
    const auto& c = contributions[k];
    if (std::abs(c.denominator) < kIntruderThreshold) {
      next.intruders.push_back(c.det);
      std::clog << "cipsi: intruder determinant 0x" << std::hex << c.det.bits << std::dec
                << " force-selected\n";
    }
    next.reference.push_back(c.det);
  }
  std::sort(next.reference.begin(), next.reference.end());
  diagonalize_reference(next, h, opt);
  next.e_pt2 = sum_pt2(en_pt2(h, next.reference, next.coeffs, next.e_var));
  return next;
}

CipsiState run_cipsi(const MolecularHamiltonian& h, const CipsiOptions& opt,
                     std::vector<CipsiState>* history) {
  CipsiState state = cipsi_initial_state(h, opt.eigen);
  if (history) history->push_back(state);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (std::abs(state.e_pt2) <= opt.target_e2 || state.reference.size() >= opt.max_dets) break;
    CipsiState next = cipsi_iterate(state, h, opt.max_dets, opt.eigen);
    if (next.reference.size() == state.reference.size()) break;  // space exhausted
    state = std::move(next);
    if (history) history->push_back(state);
  }
  return state;
}

Statevector export_statevector(const DeterminantWavefunction& w, int n_qubits) {
  Statevector s(n_qubits);
  for (const auto& [d, c] : w.coeffs) {
    if (d.bits >= s.dim())
      throw std::out_of_range("determinant does not fit in " + std::to_string(n_qubits) + " qubits");
    s[d.bits] = c;
  }
  s.normalize();
  return s;
}

std::string write_determinants(const DeterminantWavefunction& w, int norb, int nelec) {
  std::ostringstream out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g", w.energy);
  out << "# energy " << buf << '\n';
  out << "norb " << norb << " nelec " << nelec << '\n';
  for (const auto& [d, c] : w.coeffs) {
    std::snprintf(buf, sizeof buf, "%.17g %llx %llx", c,
                  static_cast<unsigned long long>(d.alpha_mask()),
                  static_cast<unsigned long long>(d.beta_mask()));
    out << buf << '\n';
  }
  return out.str();
}

DeterminantWavefunction read_determinants(const std::string& text, int* norb, int* nelec) {
  std::istringstream in(text);
  std::string line;
  DeterminantWavefunction w;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') {
      if (line.rfind("# energy ", 0) == 0) w.energy = std::stod(line.substr(9));
      continue;
    }
    std::istringstream fields(line);
    if (!header) {
      std::string k1, k2;
      int a = 0, b = 0;
      if (!(fields >> k1 >> a >> k2 >> b) || k1 != "norb" || k2 != "nelec")
        throw std::runtime_error("determinant file: expected 'norb <n> nelec <n>' header");
      if (norb) *norb = a;
      if (nelec) *nelec = b;
      header = true;
      continue;
    }
    double c = 0.0;
    std::string ah, bh;
    if (!(fields >> c >> ah >> bh))
      throw std::runtime_error("determinant file line " + std::to_string(line_no) + ": malformed");
    const auto d = Determinant::from_spatial(std::stoull(ah, nullptr, 16), std::stoull(bh, nullptr, 16));
    w.coeffs[d] = c;
  }
  if (!header) throw std::runtime_error("determinant file: missing header");
  return w;
}

}  // namespace oada
