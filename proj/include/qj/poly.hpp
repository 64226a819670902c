#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qj/abs.hpp"
#include "qj/field.hpp"

namespace qj {

/// Element of A = F_q[T]. Coefficients ascend by power of T and stay
/// trimmed, so degree() is the index of the last entry (-1 for zero).
class Poly {
public:
    Poly() : f_(nullptr) {}
    explicit Poly(const Field& f) : f_(&f) {}
    Poly(const Field& f, std::vector<Fq> coeffs);

    static Poly zero(const Field& f) { return Poly(f); }
    static Poly one(const Field& f) { return constant(f, 1); }
    static Poly constant(const Field& f, Fq c);
    /// c * T^k
    static Poly monomial(const Field& f, int k, Fq c = 1);
    /// Coefficient vector read off the base-q digits of v, constant term
    /// from the least significant digit. Enumeration order everywhere.
    static Poly decode(const Field& f, std::uint64_t v);

    const Field& field() const { return *f_; }
    bool valid() const { return f_ != nullptr; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Fq lead() const;
    Fq coeff(int k) const;
    const std::vector<Fq>& coeffs() const { return c_; }

    /// |a| = q^deg(a), |0| = 0.
    AbsValue abs() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const; // by degree, then coefficients; for ordered containers

    Poly scaled(Fq c) const;
    Poly shifted(int k) const; // * T^k, k >= 0

    /// Quotient and remainder with deg(rem) < deg(divisor).
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }

    Fq eval(Fq x) const;
    Poly pow(long long n) const;

    /// (c, c*a) with c*a monic; throws on zero input.
    std::pair<Fq, Poly> monicize() const;

    std::uint64_t encode() const;

private:
    void trim();
    const Field* f_;
    std::vector<Fq> c_;
};

Poly gcd(const Poly& a, const Poly& b); // monic gcd (or zero)

/// Number of polynomials of degree <= d: q^(d+1). Throws if it overflows.
std::uint64_t poly_count_up_to(const Field& f, int d);

/// All polynomials of degree <= d in enumeration order (including zero).
void for_each_poly(const Field& f, int d,
                   const std::function<void(const Poly&)>& fn);

/// The q^d monic polynomials of degree exactly d in enumeration order.
void for_each_monic(const Field& f, int d,
                    const std::function<void(const Poly&)>& fn);

} // namespace qj
