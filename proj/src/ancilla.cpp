#include "nphase/ancilla.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace nphase {

namespace {

std::size_t flat_index(int k, int l) noexcept {
  return block_offset(k + l) + static_cast<std::size_t>(k);
}

}  // namespace

AtomFieldState::AtomFieldState(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw std::invalid_argument("AtomFieldState: negative cutoff");
  amps_.assign(triangular_size(cutoff), std::array<cdouble, 4>{});
}

std::array<cdouble, 4>& AtomFieldState::atom_amps(int k, int l) {
  if (k < 0 || l < 0 || k + l > cutoff_)
    throw std::out_of_range("AtomFieldState::atom_amps: outside truncation");
  return amps_[flat_index(k, l)];
}

const std::array<cdouble, 4>& AtomFieldState::atom_amps(int k, int l) const {
  if (k < 0 || l < 0 || k + l > cutoff_)
    throw std::out_of_range("AtomFieldState::atom_amps: outside truncation");
  return amps_[flat_index(k, l)];
}

double AtomFieldState::norm2() const {
  double s = 0.0;
  for (const auto& a : amps_)
    for (const cdouble& c : a) s += std::norm(c);
  return s;
}

AtomFieldState evolve_atoms(const TwoModeKet& psi, const AtomCouplingConfig& cfg) {
  const int cutoff = psi.cutoff();
  AtomFieldState out(cutoff);

  // |+>|-> over (gg, ge, eg, ee); the minus signs sit on atom 2's excited leg.
  constexpr std::array<double, 4> base = {0.5, -0.5, 0.5, -0.5};
  const bool exact_pi = cfg.lambda_tau == std::numbers::pi;

  for (int n = 0; n <= cutoff; ++n) {
    const auto blk = psi.block(n);
    for (int k = 0; k <= n; ++k) {
      const cdouble c = blk[k];
      if (c == cdouble{}) continue;
      const int diff = 2 * k - n;  // k - l
      auto& atoms = out.atom_amps(k, n - k);
      for (int a = 0; a < 4; ++a) {
        const int e1 = a >> 1;  // atom 1 excited?
        const int e2 = a & 1;   // atom 2 excited?
        const int phase_int = n * e1 + diff * e2;
        cdouble phase;
        if (exact_pi) {
          // e^{-i pi q} for integer q is exactly +-1; avoid trig roundoff.
          phase = (phase_int % 2 == 0) ? 1.0 : -1.0;
        } else {
          phase = std::polar(1.0, -cfg.lambda_tau * phase_int);
        }
        atoms[a] = c * base[a] * phase;
      }
    }
  }
  return out;
}

AtomicReduction project_and_reduce(const AtomFieldState& afs, const TwoModeKet& probe) {
  if (afs.cutoff() != probe.cutoff())
    throw std::invalid_argument("project_and_reduce: mismatched cutoffs");

  std::array<cdouble, 4> v{};
  for (int n = 0; n <= afs.cutoff(); ++n) {
    const auto blk = probe.block(n);
    for (int k = 0; k <= n; ++k) {
      if (blk[k] == cdouble{}) continue;
      const cdouble w = std::conj(blk[k]);
      const auto& atoms = afs.atom_amps(k, n - k);
      for (int a = 0; a < 4; ++a) v[a] += w * atoms[a];
    }
  }

  double prob = 0.0;
  for (const cdouble& c : v) prob += std::norm(c);
  if (prob <= 1e-30)
    throw std::domain_error("project_and_reduce: post-selection has zero probability");

  const double inv = 1.0 / std::sqrt(prob);
  for (cdouble& c : v) c *= inv;
  return {v, prob};
}

std::pair<double, double> parity_weights(const TwoModeKet& psi) {
  double even = 0.0, odd = 0.0;
  for (int n = 0; n <= psi.cutoff(); ++n) {
    double w = 0.0;
    for (const cdouble& c : psi.block(n)) w += std::norm(c);
    (n % 2 == 0 ? even : odd) += w;
  }
  const double total = even + odd;
  if (total <= 0.0) throw std::domain_error("parity_weights: zero state");
  return {even / total, odd / total};
}

double atomic_linear_entropy(double p_even, double p_odd) {
  if (p_even < 0.0 || p_odd < 0.0)
    throw std::domain_error("atomic_linear_entropy: negative weight");
  const double s2 = p_even * p_even + p_odd * p_odd;
  if (s2 <= 0.0) throw std::domain_error("atomic_linear_entropy: zero weights");
  const double s4 = p_even * p_even * p_even * p_even +
                    p_odd * p_odd * p_odd * p_odd;
  return 2.0 * (1.0 - s4 / (s2 * s2));
}

double atomic_linear_entropy(std::span<const cdouble, 4> atom_state) {
  double n2 = 0.0;
  for (const cdouble& c : atom_state) n2 += std::norm(c);
  if (n2 <= 0.0) throw std::domain_error("atomic_linear_entropy: zero state");

  // rho_1 = tr_2 |v><v| with index a = 2 e1 + e2.
  double r00 = 0.0, r11 = 0.0;
  cdouble r01{};
  for (int e2 = 0; e2 < 2; ++e2) {
    r00 += std::norm(atom_state[e2]);
    r11 += std::norm(atom_state[2 + e2]);
    r01 += atom_state[e2] * std::conj(atom_state[2 + e2]);
  }
  r00 /= n2;
  r11 /= n2;
  r01 /= n2;
  const double purity = r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
  const double s = 2.0 * (1.0 - purity);
  return s < 0.0 ? 0.0 : s;
}

PointerJointState::PointerJointState(int cutoff, int halfwidth)
    : cutoff_(cutoff), half_(halfwidth) {
  if (cutoff < 0) throw std::invalid_argument("PointerJointState: negative cutoff");
  if (halfwidth < 1)
    throw std::invalid_argument("PointerJointState: halfwidth must be >= 1");
  amps_.assign(triangular_size(cutoff) * (2 * static_cast<std::size_t>(halfwidth) + 1),
               cdouble{});
}

cdouble PointerJointState::amp(int k, int l, int position) const {
  if (k < 0 || l < 0 || k + l > cutoff_ || std::abs(position) > half_)
    throw std::out_of_range("PointerJointState::amp: outside register");
  return amps_[flat_index(k, l) * (2 * half_ + 1) + (position + half_)];
}

cdouble& PointerJointState::at(int k, int l, int position) {
  if (k < 0 || l < 0 || k + l > cutoff_ || std::abs(position) > half_)
    throw std::out_of_range("PointerJointState::at: outside register");
  return amps_[flat_index(k, l) * (2 * half_ + 1) + (position + half_)];
}

double PointerJointState::norm2() const {
  double s = 0.0;
  for (const cdouble& c : amps_) s += std::norm(c);
  return s;
}

double PointerJointState::boundary_mass() const {
  const std::size_t width = 2 * static_cast<std::size_t>(half_) + 1;
  double s = 0.0;
  for (std::size_t f = 0; f < amps_.size() / width; ++f) {
    s += std::norm(amps_[f * width]);              // position -L
    s += std::norm(amps_[f * width + width - 1]);  // position +L
  }
  return s;
}

int pointer_halfwidth_for(const TwoModeKet& psi, NumberOperatorKind) {
  // Every operator kind here has eigenvalues within [-cutoff, cutoff] on the
  // truncated space, so one extra slot guarantees no wraparound.
  return psi.cutoff() + 1;
}

PointerJointState pointer_shift_state(const TwoModeKet& psi, NumberOperatorKind b,
                                      int halfwidth) {
  const int cutoff = psi.cutoff();
  PointerJointState joint(cutoff, halfwidth);

  if (is_diagonal(b)) {
    int max_shift = 0;
    for (int n = 0; n <= cutoff; ++n) {
      const auto blk = psi.block(n);
      for (int k = 0; k <= n; ++k) {
        if (blk[k] == cdouble{}) continue;
        int ev = 0;
        switch (b) {
          case NumberOperatorKind::NTotal: ev = n; break;
          case NumberOperatorKind::N1: ev = k; break;
          case NumberOperatorKind::N2: ev = n - k; break;
          case NumberOperatorKind::Sz: ev = 2 * k - n; break;
          default: break;
        }
        max_shift = std::max(max_shift, std::abs(ev));
      }
    }
    if (max_shift >= halfwidth)
      throw PointerWraparoundError(
          "pointer_shift_state: shift " + std::to_string(max_shift) +
              " reaches the register edge (halfwidth " + std::to_string(halfwidth) + ")",
          max_shift + 1);
    for (int n = 0; n <= cutoff; ++n) {
      const auto blk = psi.block(n);
      for (int k = 0; k <= n; ++k) {
        if (blk[k] == cdouble{}) continue;
        int ev = 0;
        switch (b) {
          case NumberOperatorKind::NTotal: ev = n; break;
          case NumberOperatorKind::N1: ev = k; break;
          case NumberOperatorKind::N2: ev = n - k; break;
          case NumberOperatorKind::Sz: ev = 2 * k - n; break;
          default: break;
        }
        joint.at(k, n - k, ev) = blk[k];
      }
    }
    return joint;
  }

  // Sx or Sy: diagonalize per total-number block. The spectrum on block n is
  // the integer ladder -n, -n+2, ..., n.
  for (int n = 0; n <= cutoff; ++n) {
    const auto blk = psi.block(n);
    double mass = 0.0;
    for (const cdouble& c : blk) mass += std::norm(c);
    if (mass == 0.0) continue;
    if (n >= halfwidth)
      throw PointerWraparoundError(
          "pointer_shift_state: block " + std::to_string(n) +
              " shifts past the register edge (halfwidth " +
              std::to_string(halfwidth) + ")",
          n + 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block_matrix(b, n));
    const auto& evals = solver.eigenvalues();
    const auto& u = solver.eigenvectors();
    Eigen::VectorXcd psi_n(n + 1);
    for (int i = 0; i <= n; ++i) psi_n(i) = blk[i];
    const Eigen::VectorXcd w = u.adjoint() * psi_n;

    for (int j = 0; j <= n; ++j) {
      const long shift = std::lround(evals(j));
      if (std::abs(evals(j) - static_cast<double>(shift)) > 1e-6)
        throw std::logic_error("pointer_shift_state: non-integer Stokes eigenvalue");
      for (int i = 0; i <= n; ++i)
        joint.at(i, n - i, static_cast<int>(shift)) += w(j) * u(i, j);
    }
  }
  return joint;
}

PointerMoments pointer_moments(const PointerJointState& joint, NumberOperatorKind a) {
  const int cutoff = joint.cutoff();
  const int half = joint.halfwidth();

  PointerMoments m{0.0, 0.0, 0.0};
  TwoModeKet slice(cutoff);
  for (int pos = -half; pos <= half; ++pos) {
    double mass = 0.0;
    for (int n = 0; n <= cutoff; ++n)
      for (int k = 0; k <= n; ++k) {
        const cdouble c = joint.amp(k, n - k, pos);
        slice.at(k, n - k) = c;
        mass += std::norm(c);
      }
    if (mass == 0.0) continue;
    const double a_slice = expectation({a}, slice).real();
    m.mean_p += pos * mass;
    m.mean_a += a_slice;
    m.mean_ap += pos * a_slice;
  }
  return m;
}

PointerMoments pointer_joint_measure(const TwoModeKet& psi, NumberOperatorKind b,
                                     NumberOperatorKind a, int halfwidth) {
  if (!commutes(a, b))
    throw std::invalid_argument(
        std::string("pointer_joint_measure: [") + to_string(a) + ", " + to_string(b) +
        "] != 0; the pointer record is incompatible with A");
  const PointerJointState joint = pointer_shift_state(psi, b, halfwidth);
  return pointer_moments(joint, a);
}

PointerMoments pointer_joint_measure(const TwoModeKet& psi, NumberOperatorKind b,
                                     NumberOperatorKind a) {
  return pointer_joint_measure(psi, b, a, pointer_halfwidth_for(psi, b));
}

}  // namespace nphase
