#include "qj/laurent.hpp"

#include <algorithm>

namespace qj {

namespace {
void check_same_field(const LaurentSeries& a, const LaurentSeries& b) {
    if (&a.field() != &b.field())
        throw domain_error("series belong to different fields");
}
} // namespace

LaurentSeries::LaurentSeries(const Field& f, int floor, bool exact, std::vector<Fq> c)
    : f_(&f), floor_(floor), exact_(exact), c_(std::move(c)) {
    trim();
}

void LaurentSeries::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (exact_) {
        // exact series: the floor is only storage, normalize to the support
        std::size_t drop = 0;
        while (drop < c_.size() && c_[drop] == 0) ++drop;
        if (drop > 0) {
            c_.erase(c_.begin(), c_.begin() + drop);
            floor_ += static_cast<int>(drop);
        }
        if (c_.empty()) floor_ = 0;
    }
}

LaurentSeries LaurentSeries::zero(const Field& f) {
    return LaurentSeries(f, 0, true, {});
}

LaurentSeries LaurentSeries::zero_to_precision(const Field& f, int floor) {
    return LaurentSeries(f, floor, false, {});
}

LaurentSeries LaurentSeries::from_coeffs(const Field& f, int floor, bool exact,
                                         std::vector<Fq> c) {
    return LaurentSeries(f, floor, exact, std::move(c));
}

LaurentSeries LaurentSeries::from_poly(const Poly& a) {
    return LaurentSeries(a.field(), 0, true, a.coeffs());
}

LaurentSeries LaurentSeries::monomial(const Field& f, int k, Fq c) {
    if (c == 0) return zero(f);
    return LaurentSeries(f, k, true, {c});
}

LaurentSeries LaurentSeries::from_rational(const Poly& a, const Poly& b, int P) {
    if (b.is_zero()) throw domain_error("division by zero polynomial");
    if (P < 0) throw domain_error("precision must be nonnegative");
    // a/b = Q*T^(-P) + R/(b*T^P) with |R/(b*T^P)| < q^(-P)
    auto [quot, rem] = a.shifted(P).divmod(b);
    std::vector<Fq> c(quot.coeffs());
    return LaurentSeries(a.field(), -P, rem.is_zero(), std::move(c));
}

int LaurentSeries::top() const {
    if (c_.empty()) throw domain_error("series has no stored terms");
    return floor_ + static_cast<int>(c_.size()) - 1;
}

AbsValue LaurentSeries::abs() const {
    if (!c_.empty()) return AbsValue::finite(top());
    return exact_ ? AbsValue::zero() : AbsValue::indeterminate();
}

Fq LaurentSeries::coeff(int k) const {
    if (k >= floor_ + static_cast<int>(c_.size())) return 0;
    if (k >= floor_) return c_[k - floor_];
    if (exact_) return 0;
    throw precision_error("precision exhausted: coefficient of T^" +
                          std::to_string(k) + " below floor " +
                          std::to_string(floor_));
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    check_same_field(*this, o);
    const bool exact = exact_ && o.exact_;
    int lo;
    if (exact) {
        if (c_.empty() && o.c_.empty()) return zero(*f_);
        if (c_.empty()) lo = o.floor_;
        else if (o.c_.empty()) lo = floor_;
        else lo = std::min(floor_, o.floor_);
    } else {
        lo = std::max(eff_floor(), o.eff_floor());
    }
    const int hi = std::max(top_or_below_floor(), o.top_or_below_floor());
    if (hi < lo) return LaurentSeries(*f_, lo, exact, {});
    std::vector<Fq> c(hi - lo + 1, 0);
    for (int k = lo; k <= hi; ++k)
        c[k - lo] = f_->add(coeff(k), o.coeff(k));
    return LaurentSeries(*f_, lo, exact, std::move(c));
}

LaurentSeries LaurentSeries::operator-() const {
    std::vector<Fq> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = f_->neg(c_[i]);
    return LaurentSeries(*f_, floor_, exact_, std::move(c));
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const {
    return *this + (-o);
}

LaurentSeries LaurentSeries::mul_capped(const LaurentSeries& o, int floor_cap) const {
    check_same_field(*this, o);
    if (is_exact_zero() || o.is_exact_zero()) return zero(*f_);
    bool exact = exact_ && o.exact_;
    int lo;
    if (exact) {
        lo = floor_ + o.floor_; // floors sit on the support for exact series
    } else {
        lo = kNoFloor;
        if (!exact_) lo = std::max(lo, floor_ + o.top_or_below_floor());
        if (!o.exact_) lo = std::max(lo, o.floor_ + top_or_below_floor());
    }
    if (floor_cap > lo) {
        lo = floor_cap;
        exact = false;
    }
    const int hi = top_or_below_floor() + o.top_or_below_floor();
    if (hi < lo) return LaurentSeries(*f_, lo, exact, {});
    std::vector<Fq> c(hi - lo + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const int ea = floor_ + static_cast<int>(i);
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            const int k = ea + o.floor_ + static_cast<int>(j);
            if (k < lo || k > hi) continue;
            c[k - lo] = f_->add(c[k - lo], f_->mul(c_[i], o.c_[j]));
        }
    }
    return LaurentSeries(*f_, lo, exact, std::move(c));
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    return mul_capped(o, std::numeric_limits<int>::min());
}

LaurentSeries LaurentSeries::inv(int target_floor) const {
    if (is_exact_zero()) throw domain_error("inversion of zero series");
    if (c_.empty())
        throw precision_error("indeterminate valuation: inversion of a series "
                              "that is zero to precision");
    const int t = top();
    const Fq lead_inv = f_->inv(c_.back());
    int res_floor = target_floor;
    if (!exact_) res_floor = std::max(res_floor, floor_ - 2 * t);
    const bool monomial_input = [&] {
        for (std::size_t i = 0; i + 1 < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }();
    if (monomial_input)
        return LaurentSeries(*f_, -t, exact_,
                             res_floor <= -t ? std::vector<Fq>{lead_inv}
                                             : std::vector<Fq>{});
    // f = lead*T^t*(1+u); invert 1+u by the coefficient recurrence
    const int depth = -t - res_floor; // result exponents -t .. -t-depth
    if (depth < 0) return LaurentSeries(*f_, res_floor, false, {});
    std::vector<Fq> u(depth + 1, 0); // u[j] = coefficient of T^-j in u
    for (int j = 1; j <= depth; ++j) {
        // t - j >= floor for inexact inputs by the res_floor bound
        u[j] = f_->mul(coeff(t - j), lead_inv);
    }
    std::vector<Fq> w(depth + 1, 0);
    w[0] = 1;
    for (int j = 1; j <= depth; ++j) {
        Fq acc = 0;
        for (int i = 1; i <= j; ++i)
            if (u[i] != 0 && w[j - i] != 0)
                acc = f_->add(acc, f_->mul(u[i], w[j - i]));
        w[j] = f_->neg(acc);
    }
    // result = lead^-1 * T^-t * w, stored ascending from res_floor
    std::vector<Fq> c(depth + 1, 0);
    for (int j = 0; j <= depth; ++j)
        c[depth - j] = f_->mul(lead_inv, w[j]);
    return LaurentSeries(*f_, res_floor, false, std::move(c));
}

LaurentSeries LaurentSeries::pow(long long n, int floor_cap) const {
    if (n < 0) throw domain_error("negative series power; invert first");
    LaurentSeries r = monomial(*f_, 0);
    LaurentSeries b = *this;
    while (n > 0) {
        if (n & 1) r = r.mul_capped(b, floor_cap);
        if (n >>= 1) b = b.mul_capped(b, floor_cap);
    }
    return r;
}

Poly LaurentSeries::polypart() const {
    if (!exact_ && floor_ > 0)
        throw precision_error("polynomial part undetermined: floor above T^0");
    std::vector<Fq> c;
    const int hi = top_or_below_floor();
    for (int k = 0; k <= hi; ++k) c.push_back(coeff(k));
    return Poly(*f_, std::move(c));
}

LaurentSeries LaurentSeries::frac() const {
    Poly pp = polypart();
    if (pp.is_zero()) return *this;
    return *this - from_poly(pp);
}

LaurentSeries::Nearest LaurentSeries::nearest_norm() const {
    if (!exact_ && floor_ > -1)
        throw precision_error("nearest-norm needs at least one tracked "
                              "negative exponent");
    Poly pp = polypart();
    LaurentSeries fr = pp.is_zero() ? *this : *this - from_poly(pp);
    return {fr.abs(), pp};
}

LaurentSeries LaurentSeries::truncated(int new_floor) const {
    if (is_exact_zero()) return *this;
    const int lo = exact_ ? new_floor : std::max(floor_, new_floor);
    if (lo <= floor_) return *this;
    bool dropped_nonzero = false;
    std::vector<Fq> c;
    for (int k = floor_; k <= top_or_below_floor(); ++k) {
        if (k < lo)
            dropped_nonzero |= (c_[k - floor_] != 0);
        else
            c.push_back(c_[k - floor_]);
    }
    return LaurentSeries(*f_, lo, exact_ && !dropped_nonzero, std::move(c));
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    return f_ == o.f_ && floor_ == o.floor_ && exact_ == o.exact_ && c_ == o.c_;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
    if (f_ != o.f_) return false;
    const int lo = std::max(eff_floor(), o.eff_floor());
    const int hi = std::max(top_or_below_floor(), o.top_or_below_floor());
    for (int k = lo; k <= hi; ++k)
        if (coeff(k) != o.coeff(k)) return false;
    return true;
}

} // namespace qj
