#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/builders.hpp"

namespace lapbox {

/* Landing points of the free band functions: {4k : k = 0..d}, ascending. */
struct ThresholdSet {
  int d = 0;
  std::vector<double> values;
};

ThresholdSet thresholds(int d);

/* Band-edge energies attached to the oscillation frequency k, and the union
   of open intervals where the commutator estimate has a strict sign.  For
   d = 1 the excluded points are e_minus/e_plus = 2 -+ 2cos(k/2); for d >= 2
   the good set is (0, e_of_k) with its mirror (4d - e_of_k, 4d). */
struct CriticalEnergies {
  double e_minus = 0.0;
  double e_plus = 0.0;
  double e_of_k = 0.0;
  std::vector<std::pair<double, double>> good_intervals;
};

CriticalEnergies critical_energies(int d, double k);

/* -(E - t_{j-1})(E - t_j) for E strictly inside the j-th band; the optimal
   commutator lower bound for the free operator at energy E.  Errors at band
   endpoints and outside [0, 4d]. */
double rho_delta(double e, int d);

/* Checks, on interior columns of a box, the splitting of the free commutator
   into -(Delta - t_{j-1})(Delta - t_j) plus the nonnegative remainder
   b_j = -8(j-1)Delta + 16j(j-1) + sum_{i != l} Delta_i Delta_l, and reports
   the smallest eigenvalue of the remainder on the interior subspace. */
struct BandSplitReport {
  double residual = 0.0;
  double remainder_min_eigenvalue = 0.0;
};

BandSplitReport verify_bk_decomposition(DomainPtr dom, int k_band, long margin);

/* ||theta(Delta) Wt theta(Delta)|| on a ladder of boxes, where Wt is the pure
   oscillation sin(k * sum n_i) and theta a smooth bump on (i_lo, i_hi).  In
   infinite volume the product is exactly zero whenever the interval avoids
   the critical energies; on boxes the norm decays with the radius.  With
   enforce_window the interval is validated against critical_energies and
   refused when it touches a bad point (set it false to run controls). */
struct VanishingReport {
  std::vector<int> radii;
  std::vector<double> norms;
  bool decayed = false;
};

VanishingReport verify_vanishing(int d, const std::vector<int>& radii, double k,
                                 double i_lo, double i_hi, double amplitude = 1.0,
                                 bool enforce_window = true,
                                 const std::function<double(double)>& theta = {});

/* Numerical commutator estimate over an energy window: eigenvectors of the
   truncated Hamiltonian with eigenvalue in (i_lo, i_hi) are split by where
   their mass sits (>= half within boundary distance `margin` counts as
   interior), gamma_lower is the smallest eigenvalue of the closed-form
   commutator compressed onto the interior group, and compact_norm the norm of
   the boundary group's block.  An empty window is a report, not an error. */
struct MourreWindow {
  double e = 0.0;
  double i_lo = 0.0;
  double i_hi = 0.0;
  double gamma_lower = 0.0;
  double compact_norm = 0.0;
  int n_interior = 0;
  int n_boundary = 0;
  bool empty = false;
};

MourreWindow mourre_gap(DomainPtr dom, const std::optional<PotentialSpec>& v,
                        const std::optional<PotentialSpec>& w, double i_lo, double i_hi,
                        long margin);

struct MourreScanRow {
  int d = 0;
  double k = 0.0;
  double i_lo = 0.0;
  double i_hi = 0.0;
  int r_box = 0;
  double gamma_lower = 0.0;
  double compact_norm = 0.0;
};

void write_mourre_csv(const std::string& path, const std::vector<MourreScanRow>& rows);

}  // namespace lapbox
