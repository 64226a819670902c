#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qj/errors.hpp"

namespace qj {

/// Element of F_q, packed as sum c_i * p^i over the coordinates c_i in the
/// power basis of the field's modulus. 0 and 1 are the additive and
/// multiplicative identities in every field.
using Fq = std::uint32_t;

/// The field F_q with q = p^r elements.
///
/// Instances are interned: Field::get returns a reference that stays valid
/// for the lifetime of the process, so value types (Poly, LaurentSeries, ...)
/// store plain pointers. All operations are const and thread-safe.
///
/// Extension fields (r > 1) reduce modulo a monic irreducible of degree r
/// over F_p; when none is supplied, the lexicographically least one is used,
/// so every run of the library picks the same representation.
class Field {
public:
    static const Field& get(int p, int r);
    static const Field& get(int p, int r, const std::vector<int>& modulus);
    /// Resolves q = p^r from a prime power. Rejects non prime powers.
    static const Field& get_q(int q);

    int p() const { return p_; }
    int r() const { return r_; }
    int q() const { return q_; }
    /// Modulus coefficients over Z/p, ascending, monic of degree r.
    /// Empty for prime fields.
    const std::vector<int>& modulus() const { return modulus_; }

    Fq zero() const { return 0; }
    Fq one() const { return 1; }

    Fq add(Fq a, Fq b) const { return add_table_[a * q_ + b]; }
    Fq sub(Fq a, Fq b) const { return add_table_[a * q_ + neg_table_[b]]; }
    Fq neg(Fq a) const { return neg_table_[a]; }
    Fq mul(Fq a, Fq b) const { return mul_table_[a * q_ + b]; }
    /// Throws domain_error on zero.
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    /// Integer exponents of either sign; negative exponents go through inv.
    Fq pow(Fq a, long long n) const;

    /// Image of an integer under Z -> F_p -> F_q.
    Fq from_int(long long v) const;
    Fq from_coords(std::span<const int> coords) const;
    std::vector<int> coords(Fq a) const;

    /// Tr(a) = a + a^p + ... + a^{p^(r-1)}, returned as an element of Z/p.
    int trace(Fq a) const;

    bool operator==(const Field& o) const { return this == &o; }

    std::string coeff_str(Fq a) const;

private:
    Field(int p, int r, std::vector<int> modulus);
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    static const Field& intern(int p, int r, std::vector<int> modulus);
    Fq mul_slow(Fq a, Fq b) const;
    Fq add_slow(Fq a, Fq b) const;
    Fq neg_slow(Fq a) const;

    int p_, r_, q_;
    std::vector<int> modulus_;
    // Lookup tables, built at construction for every supported field size.
    std::vector<Fq> add_table_;
    std::vector<Fq> mul_table_;
    std::vector<Fq> neg_table_;
    std::vector<Fq> inv_table_;
    std::vector<int> trace_table_;
};

/// True if v is prime (trial division; inputs are small by construction).
bool is_prime(long long v);

} // namespace qj
