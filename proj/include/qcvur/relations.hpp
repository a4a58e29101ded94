#pragma once

#include <optional>
#include <vector>

#include "qcvur/matrix.hpp"
#include "qcvur/measurement.hpp"
#include "qcvur/state.hpp"

namespace qcvur {

/// Denominators smaller than this leave a tightness ratio undefined.
inline constexpr double kRatioDenominatorTol = 1e-9;

struct MeasurementPair {
  Observable q;                      // on the measured subsystem A
  std::vector<Observable> controls;  // ordered C_1..C_N
};

/// K measurement pairs plus the operator and phase of the variance-sum bound.
struct MeasurementSetup {
  std::vector<MeasurementPair> pairs;
  ComplexMatrix ltra_operator;
  double theta = 0.0;

  /// Throws ValidationError unless K == 2, every Q acts on the same subsystem,
  /// every pair has at least one control, and theta lies in [0, 2 pi].
  void validate() const;
  std::size_t measured_subsystem() const { return pairs.front().q.subsystem(); }
};

/// K = 2, Q1 = O1 = sigma_x, Q2 = O2 = sigma_z, O = sigma_x + sigma_z, on a
/// two-qubit state with qubit 0 measured and qubit 1 as control.
MeasurementSetup default_setup(double theta = 0.5);

struct SchrodingerResult {
  double lhs;  // dA^2 dB^2
  double rhs;  // |<[A,B]>|^2/4 + |<{A~,B~}>|^2/4
};

/// Single-subsystem state; a and b act on subsystem 0.
SchrodingerResult schrodinger_bound(const DensityOperator& rho_a, const Observable& a,
                                    const Observable& b);

/// max |<phi_r|phi_s>|^2 over eigenvectors of r and s. Throws DegeneracyError
/// if either spectrum is degenerate and SubsystemError if r, s act on
/// different subsystems.
double maximal_overlap_c(const Observable& r, const Observable& s);

struct QmEurResult {
  double h_rb;
  double h_sb;
  double h_ab;
  double overlap_bound;  // log2(1/c)
  double rhs;            // overlap_bound + h_ab
  std::optional<double> u_eur;
};

/// Bipartite state; r and s act on the measured subsystem, the other one is
/// the memory.
QmEurResult qm_eur(const DensityOperator& rho, const Observable& r, const Observable& s);

/// |<O^dag (A~ + e^{i theta} B~)>|^2 / <O^dag O>  -  <A~^dag e^{i theta} B~ + h.c.>
/// evaluated on a single-subsystem state. Throws DegenerateOperator when
/// <O^dag O> < 1e-12.
double l_tra(const DensityOperator& rho_a, const ComplexMatrix& a, const ComplexMatrix& b,
             const ComplexMatrix& o, double theta);

struct QcVurResult {
  double lhs;         // sum_k E[V(Q_k | all controls)]
  double l_tra;
  double subtracted;  // sum_k (first_term + sum nested)
  double w;           // l_tra - subtracted
  std::optional<double> u;
};

/// L_tra is evaluated on the reduced state of the measured subsystem.
QcVurResult qc_vur(const DensityOperator& rho, const MeasurementSetup& setup);

}  // namespace qcvur
