#pragma once

#include <limits>
#include <vector>

#include "qj/abs.hpp"
#include "qj/poly.hpp"

namespace qj {

/// Element of k_inf = F_q((1/T)) known down to an explicit precision floor.
///
/// Coefficients are stored for exponents in [floor, top] with the top entry
/// nonzero. `exact` means every omitted lower coefficient is zero, so the
/// value is a Laurent polynomial and the floor is only a storage bound.
/// An inexact series with no stored coefficients is "zero to precision":
/// every coefficient at or above the floor is zero, nothing below is known.
///
/// Every operation reports only coefficients it can prove correct; floors
/// propagate conservatively (add: max of floors; mul: max(fl1+top2,
/// fl2+top1); inv of f with valuation v: floor + 2v).
class LaurentSeries {
public:
    LaurentSeries() : f_(nullptr), floor_(0), exact_(true) {}

    static LaurentSeries zero(const Field& f);
    static LaurentSeries from_poly(const Poly& a);
    /// c * T^k, exact.
    static LaurentSeries monomial(const Field& f, int k, Fq c = 1);
    /// a/b by long division, every coefficient at exponent >= -P exact.
    static LaurentSeries from_rational(const Poly& a, const Poly& b, int P);
    /// Inexact zero at the given floor.
    static LaurentSeries zero_to_precision(const Field& f, int floor);
    /// Series from a raw coefficient window: c[i] is the coefficient of
    /// T^(floor+i) and the caller vouches for every entry (and, when exact,
    /// for all omitted ones being zero).
    static LaurentSeries from_coeffs(const Field& f, int floor, bool exact,
                                     std::vector<Fq> c);

    const Field& field() const { return *f_; }
    bool valid() const { return f_ != nullptr; }

    bool has_terms() const { return !c_.empty(); }
    /// Exponent of the leading stored coefficient; requires has_terms().
    int top() const;
    int floor_log() const { return floor_; }
    bool exact() const { return exact_; }
    bool is_exact_zero() const { return exact_ && c_.empty(); }

    /// |f| as q^top, 0 for exact zero, Indeterminate for inexact empty.
    AbsValue abs() const;

    /// Coefficient of T^k. Known-zero above the stored range and, for exact
    /// series, below it; throws precision_error below the floor otherwise.
    Fq coeff(int k) const;

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries operator*(const LaurentSeries& o) const;

    /// Product with coefficients below floor_cap neither computed nor
    /// reported. Useful when deep coefficients are known to be irrelevant.
    LaurentSeries mul_capped(const LaurentSeries& o, int floor_cap) const;

    /// Reciprocal. target_floor bounds the depth for exact inputs (their
    /// expansions are usually infinite); for inexact inputs the provable
    /// floor is floor + 2*v and target_floor may only raise it.
    LaurentSeries inv(int target_floor) const;

    /// n >= 0, by repeated squaring; floor_cap as in mul_capped.
    LaurentSeries pow(long long n, int floor_cap = std::numeric_limits<int>::min()) const;

    /// Sum of the terms with exponent >= 0. Requires those coefficients to
    /// be known (exact, or floor <= 0).
    Poly polypart() const;
    /// this - polypart(): the terms with exponent < 0, same floor/exactness.
    LaurentSeries frac() const;

    struct Nearest {
        AbsValue norm;
        Poly nearest;
    };
    /// ||x|| = |x - polypart(x)| and the nearest polynomial.
    Nearest nearest_norm() const;

    /// Forgets coefficients below new_floor (exactness drops if any nonzero
    /// coefficient is discarded).
    LaurentSeries truncated(int new_floor) const;

    /// Identical stored representation (floor, exactness and coefficients).
    bool operator==(const LaurentSeries& o) const;
    bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

    /// True when the two series agree on every exponent both sides know.
    bool agrees_with(const LaurentSeries& o) const;

private:
    LaurentSeries(const Field& f, int floor, bool exact, std::vector<Fq> c);
    void trim();
    int top_or_below_floor() const { return c_.empty() ? floor_ - 1 : top(); }
    // effective floor: exact series are known everywhere
    static constexpr int kNoFloor = std::numeric_limits<int>::min() / 2;
    int eff_floor() const { return exact_ ? kNoFloor : floor_; }

    const Field* f_;
    int floor_;
    bool exact_;
    std::vector<Fq> c_; // c_[i] = coefficient of T^(floor_ + i)
};

} // namespace qj
