#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qj/cf.hpp"

namespace qj {

/// Breakpoint parameters (N, l) encoding eps = q^(l - S_{N+1}) with
/// 0 < l <= deg(a_{N+1}); these are exactly the values where the lattice
/// changes. For a rational handle whose expansion ends at index K, the
/// extra indices (K, l) encode eps = q^(1 - l - S_K), the ideal regime
/// eps <= |b|^-1 where the lattice has collapsed to bA.
struct EpsIndex {
    int N = 0;
    int l = 1;
    bool operator==(const EpsIndex& o) const { return N == o.N && l == o.l; }
    bool operator!=(const EpsIndex& o) const { return !(*this == o); }
};

/// Validated facts about one breakpoint of one handle.
struct EpsInfo {
    EpsIndex idx;
    int log_eps;    // eps = q^log_eps, always < 0
    int min_degree; // degree of the minimal nonzero lattice element (S_N)
    bool ideal;     // rational handle at eps <= |b|^-1: lattice is bA
};

/// Validates (N, l) against the handle's expansion. Throws domain_error for
/// invalid indices (including eps >= 1), precision_error when a truncated
/// expansion cannot certify a_{N+1}.
EpsInfo eps_info(const RealHandle& f, EpsIndex e);

/// All breakpoints with N <= N_max in strictly decreasing eps order. For a
/// rational handle the schedule ends with the first ideal index.
std::vector<EpsIndex> eps_schedule(const RealHandle& f, int N_max);

/// One basis vector T^r * qbar_n of the lattice.
struct BasisEntry {
    int r = 0;
    int n = 0;
    Poly value;                // T^r * qbar_n
    int degree = 0;            // r + S_n
    std::optional<int> errlog; // r - S_{n+1}; empty when the error is 0
};

/// The Lemma-6 style basis of the lattice at one breakpoint, listed in
/// strictly increasing degree order (one entry per attained degree), cut at
/// deg_bound. For rational handles the final block is the tail of bA.
struct LambdaBasis {
    EpsInfo eps;
    int deg_bound = 0;
    std::vector<BasisEntry> entries;
};

LambdaBasis lambda_basis(const RealHandle& f, EpsIndex e, int deg_bound);

/// Brute force: every lambda with deg <= deg_bound and ||lambda f|| < eps,
/// decided through Laurent expansion at sufficient precision. Enumeration
/// order; includes 0. The independent oracle for everything above.
std::vector<Poly> lambda_member_oracle(const RealHandle& f, EpsIndex e,
                                       int deg_bound);

/// Lattice element in concise form: finitely many n -> c_n(T) with
/// lambda = sum c_n * qbar_n and deg(c_n) <= deg(a_{n+1}) - 1 (the final
/// rational block is unbounded).
struct LatticeElement {
    std::map<int, Poly> comps;
    bool is_zero() const;
    /// Index m' of the highest block in the support.
    int top_block() const;
};

/// lambda itself: sum over the support of c_n * qbar_n.
Poly lattice_value(const LatticeElement& elem, const ConvergentTable& table);

/// The f-dual: sum c_n * qbarperp_n, satisfying |lambda f - dual| < eps.
Poly lambda_dual(const LatticeElement& elem, const ConvergentTable& table);

/// ||lambda f|| from the concise form: the strictly-decreasing error
/// pattern of the basis makes this the largest per-block error
/// q^(deg c_n - S_{n+1}). Zero for elements supported on the exact tail of
/// a rational handle. Throws domain_error on the zero element.
AbsValue lambda_error(const LatticeElement& elem, const RealHandle& f);

/// Exactly the monic lattice elements of degree <= deg_bound, each once, in
/// deterministic order (top basis entry ascending, then lower coefficients
/// in counting order).
void lambda_enumerate_monic(
    const LambdaBasis& basis, int deg_bound,
    const std::function<void(const LatticeElement&, const Poly&)>& fn);

} // namespace qj
