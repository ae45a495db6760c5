#pragma once

#include "core/builders.hpp"

namespace lapbox {

/* Closed forms of [X, iA] assembled directly from shifts, positions, and
   diagonals; every hop coefficient is bounded uniformly in the box radius,
   unlike the raw product i(XA - AX) whose boundary rows carry O(R) entries. */
LatOp closed_commutator_laplacian(DomainPtr dom);
LatOp closed_commutator_wigner(DomainPtr dom, const PotentialSpec& spec);
LatOp closed_commutator_potential(DomainPtr dom, const PotentialSpec& spec);

/* Each verifier assembles [X, iA] by sparse algebra, subtracts the closed
   form, and returns the max column norm over sites with |n|_inf <= R - margin
   (margin counts hops from the first dropped site, so margin = 0 keeps the
   whole box).  Dirichlet truncation contaminates a thin collar; margin >= 2
   leaves only round-off. */
double verify_commutator_identity_laplacian(DomainPtr dom, long margin);
double verify_commutator_identity_wigner(DomainPtr dom, const PotentialSpec& spec, long margin);
double verify_commutator_identity_potential(DomainPtr dom, const PotentialSpec& spec, long margin);

/* Shared helper: max over interior columns of the l2 norm of D's column. */
double interior_column_residual(const LatOp& diff, long margin);

}  // namespace lapbox
