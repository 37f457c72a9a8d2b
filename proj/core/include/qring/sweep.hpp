#pragma once

#include <string>
#include <vector>

#include "qring/hybrid.hpp"

namespace qring {

/// Plain numeric table with an error slot per row; rows stay in grid order
/// regardless of evaluation order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_error;  // empty string = ok

  int failed_rows() const;
};

enum class SweepTarget { SingleSpectrum, DoubleSpectrum, TwoMode, B1Lifetime };

/// One-axis geometry sweep over the (inner-ring) spacing a.
struct SweepSpec {
  OligomerTag geometry = OligomerTag::Ring;
  int n_d = 6;
  double ratio = 0.0;  // b/a, DoubleRing only
  double twist = 0.0;
  double a_min = 0.05;
  double a_max = 0.25;
  int a_count = 2;
  SweepTarget target = SweepTarget::SingleSpectrum;
  int momentum = 0;  // TwoMode sector for DoubleRing

  void validate() const;
  std::vector<double> grid() const;
};

Table run_sweep(const SweepSpec& spec);

/// Exhaustive grid maximization of the lifetime enhancement gamma0/Gamma of
/// the fully antisymmetric m = 3 product state of the hexagonal double ring,
/// over spacing a and size ratio b/a; optional golden-section refinement of
/// each axis around the grid argmax.
struct OptimizationResult {
  double best_a = 0.0;
  double best_ratio = 0.0;
  double best_enhancement = 0.0;
  Table surface;  // columns a, b_over_a, enhancement
  int evaluations = 0;
};

OptimizationResult optimize_b1_lifetime(double a_lo, double a_hi, int a_count, double ratio_lo,
                                        double ratio_hi, int ratio_count, bool refine = false);

}  // namespace qring
