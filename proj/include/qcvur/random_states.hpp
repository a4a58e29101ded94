#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qcvur/matrix.hpp"
#include "qcvur/relations.hpp"
#include "qcvur/state.hpp"

namespace qcvur {

/// Seeded generators for property checks. All draws go through one
/// std::mt19937_64 so a seed fixes the whole sequence.
class RandomStates {
 public:
  explicit RandomStates(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);

  /// Ginibre-distributed mixed state G G^dag / Tr(G G^dag).
  DensityOperator mixed_state(std::vector<std::size_t> dims);
  /// Haar-like pure state from normalized complex Gaussian amplitudes.
  DensityOperator pure_state(std::vector<std::size_t> dims);

  /// (G + G^dag)/2 with standard complex Gaussian G.
  ComplexMatrix hermitian(std::size_t dim);
  /// Complex Gaussian matrix; invertible with probability one.
  ComplexMatrix general(std::size_t dim);

  /// Product of random Pauli rotations exp(-i phi P/2) on each qubit plus
  /// entangling ZZ rotations between neighbours, repeated `layers` times.
  ComplexMatrix unitary_qubits(std::size_t n_qubits, int layers = 3);

 private:
  cplx gaussian();

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// K = 2 setup on `n_qubits` qubits: random measured qubit, random Hermitian
/// Q_1, Q_2, each with `n_controls` random Hermitian controls on distinct
/// other qubits in random order, random O and theta.
MeasurementSetup random_setup(RandomStates& rng, std::size_t n_qubits, std::size_t n_controls);

}  // namespace qcvur
