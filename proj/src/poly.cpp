#include "qj/poly.hpp"

#include <algorithm>

namespace qj {

namespace {
void check_same_field(const Poly& a, const Poly& b) {
    if (&a.field() != &b.field())
        throw domain_error("polynomials belong to different fields");
}
} // namespace

Poly::Poly(const Field& f, std::vector<Fq> coeffs) : f_(&f), c_(std::move(coeffs)) {
    trim();
}

Poly Poly::constant(const Field& f, Fq c) {
    Poly p(f);
    if (c != 0) p.c_ = {c};
    return p;
}

Poly Poly::monomial(const Field& f, int k, Fq c) {
    if (k < 0) throw domain_error("monomial exponent must be nonnegative");
    Poly p(f);
    if (c != 0) {
        p.c_.assign(k + 1, 0);
        p.c_[k] = c;
    }
    return p;
}

Poly Poly::decode(const Field& f, std::uint64_t v) {
    const auto q = static_cast<std::uint64_t>(f.q());
    std::vector<Fq> c;
    while (v > 0) {
        c.push_back(static_cast<Fq>(v % q));
        v /= q;
    }
    return Poly(f, std::move(c));
}

std::uint64_t Poly::encode() const {
    const auto q = static_cast<std::uint64_t>(f_->q());
    std::uint64_t v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * q + *it;
    return v;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Fq Poly::lead() const {
    if (c_.empty()) throw domain_error("zero polynomial has no leading coefficient");
    return c_.back();
}

Fq Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

AbsValue Poly::abs() const {
    if (c_.empty()) return AbsValue::zero();
    return AbsValue::finite(degree());
}

Poly Poly::operator+(const Poly& o) const {
    check_same_field(*this, o);
    std::vector<Fq> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = f_->add(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
    return Poly(*f_, std::move(c));
}

Poly Poly::operator-() const {
    std::vector<Fq> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = f_->neg(c_[i]);
    return Poly(*f_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same_field(*this, o);
    if (c_.empty() || o.c_.empty()) return Poly(*f_);
    std::vector<Fq> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] = f_->add(c[i + j], f_->mul(c_[i], o.c_[j]));
    }
    return Poly(*f_, std::move(c));
}

bool Poly::operator==(const Poly& o) const {
    return f_ == o.f_ && c_ == o.c_;
}

bool Poly::operator<(const Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (int i = degree(); i >= 0; --i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

Poly Poly::scaled(Fq s) const {
    if (s == 0) return Poly(*f_);
    std::vector<Fq> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = f_->mul(c_[i], s);
    return Poly(*f_, std::move(c));
}

Poly Poly::shifted(int k) const {
    if (k < 0) throw domain_error("negative shift");
    if (c_.empty()) return *this;
    std::vector<Fq> c(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return Poly(*f_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    check_same_field(*this, divisor);
    if (divisor.is_zero()) throw domain_error("division by zero polynomial");
    Poly rem = *this;
    Poly quo(*f_);
    const int db = divisor.degree();
    const Fq lead_inv = f_->inv(divisor.lead());
    while (rem.degree() >= db) {
        int shift = rem.degree() - db;
        Fq c = f_->mul(rem.lead(), lead_inv);
        quo = quo + Poly::monomial(*f_, shift, c);
        rem = rem - divisor.scaled(c).shifted(shift);
    }
    return {quo, rem};
}

Fq Poly::eval(Fq x) const {
    Fq acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = f_->add(f_->mul(acc, x), *it);
    return acc;
}

Poly Poly::pow(long long n) const {
    if (n < 0) throw domain_error("negative polynomial power");
    Poly r = Poly::one(*f_);
    Poly b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

std::pair<Fq, Poly> Poly::monicize() const {
    if (is_zero()) throw domain_error("cannot monicize the zero polynomial");
    Fq c = f_->inv(lead());
    return {c, scaled(c)};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.monicize().second;
}

std::uint64_t poly_count_up_to(const Field& f, int d) {
    if (d < 0) return 1; // just the zero polynomial
    std::uint64_t n = 1;
    for (int i = 0; i <= d; ++i) {
        if (n > UINT64_MAX / f.q()) throw domain_error("enumeration too large");
        n *= f.q();
    }
    return n;
}

void for_each_poly(const Field& f, int d,
                   const std::function<void(const Poly&)>& fn) {
    const std::uint64_t n = poly_count_up_to(f, d);
    for (std::uint64_t v = 0; v < n; ++v) fn(Poly::decode(f, v));
}

void for_each_monic(const Field& f, int d,
                    const std::function<void(const Poly&)>& fn) {
    if (d < 0) throw domain_error("monic degree must be nonnegative");
    const std::uint64_t n = poly_count_up_to(f, d - 1);
    const Poly top = Poly::monomial(f, d);
    for (std::uint64_t v = 0; v < n; ++v) fn(top + Poly::decode(f, v));
}

} // namespace qj
