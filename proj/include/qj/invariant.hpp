#pragma once

#include <optional>

#include "qj/lattice.hpp"

namespace qj {

/// A zeta value: sum of lambda^(-n) over the nonzero monic elements of a
/// lattice (or of all of A), with every reported coefficient exact and the
/// omitted tail provably below the floor.
struct ZetaValue {
    LaurentSeries value;
    int n = 0;
    std::optional<EpsIndex> eps; // absent for zeta_A
    int tail_bound_log = 0;      // |omitted tail| <= q^tail_bound_log < q^floor
};

/// zeta_{f,eps}(n) summed with the degree cutoff n*deg(lambda) <= P; the
/// result's floor is -P. Throws precision_error when the expansion cannot
/// certify enough partial quotients to reach the cutoff. For n = q-1 and
/// q^2-1 the sum is grouped over F_q-subspaces (linearized-polynomial fast
/// path); other exponents enumerate directly.
ZetaValue zeta_eps(const RealHandle& f, EpsIndex e, int n, int P);

/// Reference implementation: plain enumeration of the monic lattice
/// elements with one Laurent inversion per term. Same contract as zeta_eps;
/// kept as the independent oracle for the fast path.
ZetaValue zeta_eps_direct(const RealHandle& f, EpsIndex e, int n, int P);

/// zeta_A(n) over all monic polynomials, same cutoff convention.
ZetaValue zeta_A(const Field& F, int n, int P);

/// zeta_{F_q}(n) = sum over nonzero scalars of c^(-n). Equals -1 at
/// n = q-1 and q^2-1.
Fq zeta_scalar(const Field& F, int n);

/// Discriminant and weight-(q-1) form at one breakpoint:
///   delta = -(T^{q^2}-T) z2 + (T^q-T)^q z1^{q+1}
///   g     = -(T^q-T) z1
/// with z1 = zeta_{f,eps}(q-1) at floor -P and z2 = zeta_{f,eps}(q^2-1)
/// computed at the index-adapted depth that matches z1's relative
/// precision, so the combination keeps P - (q-1)*S_N certain coefficients.
struct DeltaG {
    LaurentSeries delta;
    LaurentSeries g;
    ZetaValue z1, z2;
};

DeltaG delta_g_eps(const RealHandle& f, EpsIndex e, int P);

/// The eps-modular invariant j_eps = g^{q+1} / delta.
struct JResult {
    enum class Kind { finite, infinity };
    Kind kind = Kind::finite;
    bool certified = false; // for infinity: proved via the ideal argument
    EpsIndex eps;
    std::optional<LaurentSeries> value; // finite only
    std::optional<int> abs_log;         // log_q |j|, finite only

    bool is_infinity() const { return kind == Kind::infinity; }
};

/// Computes j_eps. Rational handles in the ideal regime (eps <= |b|^-1)
/// return Infinity(certified) via the ideal argument, verified against the
/// membership oracle at small degree. Finite values are cross-checked
/// against 1/(1/(T^q-T) - J_eps) on all shared coefficients.
JResult j_eps(const RealHandle& f, EpsIndex e, int P);

/// The zeta quotient J~ = z2 / z1^{q+1}; |J~| = 1 for irrational f.
LaurentSeries j_tilde(const RealHandle& f, EpsIndex e, int P);

/// One accumulation value of the limit-set explorer.
struct LimitClass {
    bool infinite = false;
    bool certified = false;              // infinite classes only
    std::optional<LaurentSeries> value;  // finite classes, truncated to -P
    std::vector<EpsIndex> achieved;
};

struct LimitSet {
    std::vector<LimitClass> classes;
    int precision = 0;
    bool stabilized = false;
};

/// Runs j_eps over the whole schedule up to N_max and groups the values
/// that agree on every coefficient down to -P. Exact handles only.
LimitSet jqt_limit_set(const RealHandle& f, int N_max, int P);

/// x -> (a x + b) / (c x + d) with unit determinant class.
struct Mobius {
    Poly a, b, c, d;
    static Mobius identity(const Field& F);
    /// f -> f + t
    static Mobius translation(const Poly& t);
    /// f -> 1/f
    static Mobius inversion(const Field& F);
    Mobius compose(const Mobius& o) const; // this after o
};

/// Image handle of f under M: rational stays rational, quadratic stays
/// quadratic (period re-derived exactly and certified by state repetition),
/// truncated series are transformed with propagated precision.
RealHandle pgl_transform(const RealHandle& f, const Mobius& M);

} // namespace qj
