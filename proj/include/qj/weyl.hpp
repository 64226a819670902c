#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qj/cf.hpp"

namespace qj {

/// Exponent of the basic character at b*g: Tr(c_{-1}(b*g)) in Z/p, so that
/// e0(b*g) = zeta_p^exponent. Additive in g and zero on A.
int char_exponent(const LaurentSeries& g, const Poly& b);

/// Character sum over {a : deg a <= d} kept as an exact histogram of
/// exponents; the normalized magnitude is the only floating-point quantity
/// in the library and is derived from the histogram for reporting.
struct WeylSum {
    std::vector<std::uint64_t> counts; // index j: #{a : exponent = j}, size p
    int d = 0;
    Poly b;
    double magnitude = 0.0; // |sum of counts[j] zeta_p^j| / q^(d+1)

    std::uint64_t total() const;
};

WeylSum weyl_sum(const RealHandle& f, const Poly& b, int d);

/// The exact telescoping identity behind the Weyl-criterion proof: once
/// e0(b*f) != 1, the unnormalized sums over deg a <= d coincide for every
/// d >= deg b. Histograms are compared exactly (equal sums iff the counts
/// differ by a constant vector).
struct TelescopingRow {
    int d = 0;
    std::vector<std::uint64_t> counts;
    double magnitude = 0.0;
};

struct TelescopingReport {
    Poly b;
    int delta = 0; // deg b
    std::vector<TelescopingRow> rows;
    bool constant = false;
};

/// Runs the check up to d_max. When b is not supplied, searches monic b by
/// increasing degree within the given budget; failure to find one raises
/// domain_error (rational f or budget too small — never asserts which).
TelescopingReport telescoping_check(const RealHandle& f,
                                    std::optional<Poly> b, int d_max,
                                    int b_degree_budget = 3);

/// True when the two histograms give the same character sum, i.e. their
/// difference is a multiple of (1, 1, ..., 1).
bool same_character_sum(const std::vector<std::uint64_t>& a,
                        const std::vector<std::uint64_t>& b);

} // namespace qj
