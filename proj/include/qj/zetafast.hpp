#pragma once

#include <utility>

#include "qj/laurent.hpp"

namespace qj {

/// Both special zeta values of the F_q-span of the entries in one pass:
/// zeta(q-1) reported at floor -P1 and zeta(q^2-1) at floor -P2 (monic
/// elements, matching the direct enumeration over the same entry list).
///
/// Uses the subspace product e_W(z) = prod_{lambda in W} (z - lambda),
/// a linearized polynomial built by e_{i+1} = e_i^q - e_i(w_{i+1})^{q-1} e_i;
/// the power sums come out of its low coefficients:
///   E_{q-1} = a1/a0,  E_{q^2-1} = a2/a0 - (-1)^{q+1} (a1/a0)^{q+1},
/// and the monic zeta is -E_n for n = q-1, q^2-1. Coefficients are carried
/// as scaled mantissas because the a_j have enormous degrees.
std::pair<LaurentSeries, LaurentSeries> zeta_pair_linearized(
    const Field& F, const std::vector<Poly>& entries, int P1, int P2);

} // namespace qj
