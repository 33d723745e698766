#pragma once

// Dense state-vector and density-matrix engine for the spin + photon register.
//
// Qubit 0 is the spin; photons are appended in emission order. Qubit q of an
// m-qubit register is bit (m - 1 - q) of the amplitude index, so appending a
// photon appends a least-significant bit. |0> = spin up = H polarization.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace lcs {

/// Measurement outcome with (numerically) zero probability.
class ImpossibleOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using Gate2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using AmplitudeVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using OperatorMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
class BasicPureState {
 public:
  using Vector = AmplitudeVector<Scalar>;

  /// Register with a single qubit in |0>.
  BasicPureState() : BasicPureState(1) {}

  /// m-qubit register in |0...0>. m == 0 is the scalar (empty) register left
  /// after projecting out every qubit.
  explicit BasicPureState(int qubits) : qubits_(qubits), amps_(Vector::Zero(Eigen::Index{1} << qubits)) {
    if (qubits < 0 || qubits > 24) throw std::invalid_argument("PureState: unsupported qubit count");
    amps_(0) = Complex<Scalar>(1);
  }

  /// Wraps an amplitude vector; renormalizes when `normalize` is set, otherwise
  /// the caller guarantees unit norm.
  BasicPureState(Vector amps, bool normalize = false) : amps_(std::move(amps)) {
    const auto dim = amps_.size();
    if (dim < 1 || (dim & (dim - 1)) != 0) {
      throw std::invalid_argument("PureState: dimension must be a power of two");
    }
    qubits_ = 0;
    while ((Eigen::Index{1} << qubits_) < dim) ++qubits_;
    if (normalize) {
      const Scalar norm = amps_.norm();
      if (!(norm > Scalar(0))) throw std::invalid_argument("PureState: zero vector");
      amps_ /= norm;
    }
  }

  int qubits() const { return qubits_; }
  Eigen::Index dimension() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Vector& amplitudes() { return amps_; }
  Complex<Scalar> operator[](Eigen::Index i) const { return amps_(i); }
  Scalar norm() const { return amps_.norm(); }

 private:
  int qubits_ = 0;
  Vector amps_;
};

using PureState = BasicPureState<double>;

/// Rotation about the y axis: ry(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>.
template <typename Scalar>
Gate2<Scalar> ry(Scalar theta) {
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  Gate2<Scalar> u;
  u << c, -s, s, c;
  return u;
}

template <typename Scalar>
Gate2<Scalar> pauli_z() {
  Gate2<Scalar> u;
  u << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
  return u;
}

namespace detail {
inline Eigen::Index bit_of(int qubits, int index) { return Eigen::Index{1} << (qubits - 1 - index); }

inline void check_index(int qubits, int index, const char* what) {
  if (index < 0 || index >= qubits) throw std::out_of_range(what);
}
}  // namespace detail

template <typename Scalar>
bool is_unitary(const Gate2<Scalar>& u, Scalar tol = Scalar(1e-12)) {
  return (u.adjoint() * u - Gate2<Scalar>::Identity()).norm() <= tol;
}

/// Applies a single-qubit unitary to qubit `index`.
template <typename Scalar>
BasicPureState<Scalar> apply_single(const BasicPureState<Scalar>& state, int index, const Gate2<Scalar>& u) {
  detail::check_index(state.qubits(), index, "apply_single: qubit index out of range");
  if (!is_unitary(u)) throw std::invalid_argument("apply_single: gate is not unitary");
  const Eigen::Index bit = detail::bit_of(state.qubits(), index);
  auto out = state;
  auto& a = out.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & bit) continue;
    const Complex<Scalar> lo = a(i);
    const Complex<Scalar> hi = a(i | bit);
    a(i) = u(0, 0) * lo + u(0, 1) * hi;
    a(i | bit) = u(1, 0) * lo + u(1, 1) * hi;
  }
  return out;
}

/// Polarization-preserving decay: |s>_spin -> |s>_spin |s>_photon, appending
/// the photon as the last qubit.
template <typename Scalar>
BasicPureState<Scalar> emit_photon(const BasicPureState<Scalar>& state, int spin_index = 0) {
  if (spin_index != 0) throw std::out_of_range("emit_photon: the spin is qubit 0");
  const int m = state.qubits();
  const Eigen::Index spin_bit = detail::bit_of(m, 0);
  typename BasicPureState<Scalar>::Vector grown = BasicPureState<Scalar>::Vector::Zero(2 * state.dimension());
  for (Eigen::Index i = 0; i < state.dimension(); ++i) {
    const Eigen::Index photon = (i & spin_bit) ? 1 : 0;
    grown(2 * i + photon) = state[i];
  }
  return BasicPureState<Scalar>(std::move(grown));
}

/// Half-wave plate on a photon: Pauli Z on that qubit.
template <typename Scalar>
BasicPureState<Scalar> waveplate_z(const BasicPureState<Scalar>& state, int photon_index) {
  if (photon_index < 1) throw std::out_of_range("waveplate_z: photon indices start at 1");
  detail::check_index(state.qubits(), photon_index, "waveplate_z: qubit index out of range");
  const Eigen::Index bit = detail::bit_of(state.qubits(), photon_index);
  auto out = state;
  auto& a = out.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & bit) a(i) = -a(i);
  }
  return out;
}

template <typename Scalar>
struct Projection {
  BasicPureState<Scalar> state;
  Scalar probability;
};

/// Projects qubit `index` onto `outcome`, removes it from the register and
/// renormalizes.
template <typename Scalar>
Projection<Scalar> project(const BasicPureState<Scalar>& state, int index, int outcome,
                           Scalar min_probability = Scalar(1e-14)) {
  detail::check_index(state.qubits(), index, "project: qubit index out of range");
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("project: outcome must be 0 or 1");
  const int m = state.qubits();
  const Eigen::Index low_bits = Eigen::Index{1} << (m - 1 - index);
  typename BasicPureState<Scalar>::Vector kept(state.dimension() / 2);
  for (Eigen::Index j = 0; j < kept.size(); ++j) {
    const Eigen::Index high = j / low_bits;
    const Eigen::Index low = j % low_bits;
    const Eigen::Index i = (high * 2 + outcome) * low_bits + low;
    kept(j) = state[i];
  }
  const Scalar p = kept.squaredNorm();
  if (!(p >= min_probability)) {
    throw ImpossibleOutcome("project: outcome has vanishing probability");
  }
  kept /= std::sqrt(p);
  return {BasicPureState<Scalar>(std::move(kept)), p};
}

/// Linear cluster state: CZ between neighbours applied to |+>^n.
template <typename Scalar = double>
BasicPureState<Scalar> ideal_lcs(int photons) {
  if (photons < 1 || photons > 20) throw std::invalid_argument("ideal_lcs: photon count out of range");
  const Eigen::Index dim = Eigen::Index{1} << photons;
  typename BasicPureState<Scalar>::Vector amps(dim);
  const Scalar mag = Scalar(1) / std::sqrt(static_cast<Scalar>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    // Adjacent pairs of set bits each contribute a CZ sign.
    const int pairs = std::popcount(static_cast<unsigned long long>(i & (i >> 1)));
    amps(i) = Complex<Scalar>(pairs % 2 ? -mag : mag);
  }
  return BasicPureState<Scalar>(std::move(amps));
}

template <typename Scalar>
class BasicDensityMatrix {
 public:
  using Matrix = OperatorMatrix<Scalar>;

  explicit BasicDensityMatrix(Matrix entries) : rho_(std::move(entries)) {
    if (rho_.rows() != rho_.cols()) throw std::invalid_argument("DensityMatrix: not square");
  }

  static BasicDensityMatrix pure(const BasicPureState<Scalar>& psi) {
    return BasicDensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static BasicDensityMatrix maximally_mixed(int qubits) {
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    return BasicDensityMatrix(Matrix::Identity(dim, dim) / Scalar(dim));
  }

  /// Convex combination with the given (non-negative, unit-sum) weights.
  template <typename Range, typename Weights>
  static BasicDensityMatrix mixture(const Range& states, const Weights& weights) {
    auto w = std::begin(weights);
    Matrix acc;
    for (const auto& psi : states) {
      if (acc.size() == 0) acc = Matrix::Zero(psi.dimension(), psi.dimension());
      acc.noalias() += Scalar(*w++) * (psi.amplitudes() * psi.amplitudes().adjoint());
    }
    return BasicDensityMatrix(std::move(acc));
  }

  const Matrix& entries() const { return rho_; }
  Eigen::Index dimension() const { return rho_.rows(); }
  Scalar trace() const { return rho_.trace().real(); }
  Scalar purity() const { return (rho_ * rho_).trace().real(); }
  Scalar hermiticity_error() const { return (rho_ - rho_.adjoint()).norm(); }
  Scalar min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

 private:
  Matrix rho_;
};

using DensityMatrix = BasicDensityMatrix<double>;

/// <psi|rho|psi>, clamped to [0, 1] when within `tol` of the interval.
template <typename Scalar>
Scalar fidelity_to_pure(const BasicDensityMatrix<Scalar>& rho, const BasicPureState<Scalar>& psi,
                        Scalar tol = Scalar(1e-10)) {
  if (rho.dimension() != psi.dimension()) {
    throw std::invalid_argument("fidelity_to_pure: dimension mismatch");
  }
  const Scalar f = (psi.amplitudes().adjoint() * rho.entries() * psi.amplitudes())(0, 0).real();
  if (f < -tol || f > Scalar(1) + tol) throw std::domain_error("fidelity_to_pure: value outside [0,1]");
  return std::clamp(f, Scalar(0), Scalar(1));
}

/// Squared overlap |<a|b>|^2 of two pure states.
template <typename Scalar>
Scalar overlap_squared(const BasicPureState<Scalar>& a, const BasicPureState<Scalar>& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("overlap_squared: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// Traces out qubit `index`.
template <typename Scalar>
BasicDensityMatrix<Scalar> partial_trace(const BasicDensityMatrix<Scalar>& rho, int qubits, int index) {
  detail::check_index(qubits, index, "partial_trace: qubit index out of range");
  const Eigen::Index low_bits = Eigen::Index{1} << (qubits - 1 - index);
  const Eigen::Index dim = rho.dimension() / 2;
  auto expand = [&](Eigen::Index j, Eigen::Index bit) {
    return ((j / low_bits) * 2 + bit) * low_bits + j % low_bits;
  };
  typename BasicDensityMatrix<Scalar>::Matrix out = BasicDensityMatrix<Scalar>::Matrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      out(r, c) = rho.entries()(expand(r, 0), expand(c, 0)) + rho.entries()(expand(r, 1), expand(c, 1));
    }
  }
  return BasicDensityMatrix<Scalar>(std::move(out));
}

}  // namespace lcs
