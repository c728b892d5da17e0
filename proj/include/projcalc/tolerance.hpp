#pragma once

namespace projcalc {

struct ToleranceConfig {
  double tol_validate = 1e-9;  // projection / symmetry residuals
  double tol_cluster = 1e-7;   // eigenvalue clustering
  double tol_rank = 1e-8;      // relative singular-value cutoff
  double tol_report = 1e-6;    // certificate residuals

  // Throws Error(InvalidSpec) unless all are positive and tol_validate <= tol_report.
  void check() const;
};

}  // namespace projcalc
