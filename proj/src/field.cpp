#include "qj/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace qj {
namespace {

// The packed-code representation needs q*q mul table entries; this bound
// keeps table memory under a few MB. Validated field sizes are q <= 9.
constexpr int kMaxQ = 1024;

// --- Z/p polynomial helpers (used only for modulus validation and table
// construction; ascending coefficients, trimmed).

using Zp = std::vector<int>;

void zp_trim(Zp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Zp zp_mul(const Zp& a, const Zp& b, int p) {
    if (a.empty() || b.empty()) return {};
    Zp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    zp_trim(r);
    return r;
}

Zp zp_mod(Zp a, const Zp& m, int p) {
    zp_trim(a);
    while (a.size() >= m.size()) {
        int shift = static_cast<int>(a.size() - m.size());
        // m is monic, so the leading coefficient divides directly.
        int c = a.back();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[i + shift] = ((a[i + shift] - c * m[i]) % p + p) % p;
        zp_trim(a);
    }
    return a;
}

Zp zp_powmod(Zp base, long long e, const Zp& m, int p) {
    Zp r{1};
    base = zp_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = zp_mod(zp_mul(r, base, p), m, p);
        base = zp_mod(zp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

Zp zp_gcd(Zp a, Zp b, int p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        // make b monic before reducing
        int lead = b.back();
        int li = 1;
        while ((lead * li) % p != 1) ++li;
        for (auto& c : b) c = (c * li) % p;
        a = zp_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

Zp zp_sub(Zp a, const Zp& b, int p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    zp_trim(a);
    return a;
}

// f monic of degree r >= 1 over F_p. Frobenius-based irreducibility test.
bool zp_irreducible(const Zp& f, int p) {
    int r = static_cast<int>(f.size()) - 1;
    if (r < 1) return false;
    if (r == 1) return true;
    const Zp x{0, 1};
    // x^(p^r) must reduce to x mod f
    Zp h = x;
    for (int i = 0; i < r; ++i) h = zp_powmod(h, p, f, p);
    if (zp_sub(h, x, p) != Zp{}) return false;
    // for each prime divisor d of r, gcd(x^(p^(r/d)) - x, f) must be trivial
    int n = r;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        while (n % d == 0) n /= d;
        Zp g = x;
        for (int i = 0; i < r / d; ++i) g = zp_powmod(g, p, f, p);
        Zp gc = zp_gcd(zp_sub(g, x, p), f, p);
        if (gc.size() > 1) return false;
    }
    if (n > 1) { // n is the remaining (prime) divisor of r, possibly r itself
        Zp g = x;
        for (int i = 0; i < r / n; ++i) g = zp_powmod(g, p, f, p);
        Zp gc = zp_gcd(zp_sub(g, x, p), f, p);
        if (gc.size() > 1) return false;
    }
    return true;
}

// Lexicographically least monic irreducible of degree r over F_p:
// scan lower-coefficient vectors (c_0, ..., c_{r-1}) in base-p counting
// order, c_0 least significant.
Zp default_modulus(int p, int r) {
    long long bound = 1;
    for (int i = 0; i < r; ++i) bound *= p;
    for (long long v = 0; v < bound; ++v) {
        Zp f(r + 1, 0);
        long long t = v;
        for (int i = 0; i < r; ++i) {
            f[i] = static_cast<int>(t % p);
            t /= p;
        }
        f[r] = 1;
        if (zp_irreducible(f, p)) return f;
    }
    throw domain_error("no irreducible modulus found"); // unreachable
}

} // namespace

bool is_prime(long long v) {
    if (v < 2) return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

Field::Field(int p, int r, std::vector<int> modulus)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
    long long q = 1;
    for (int i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxQ) throw domain_error("field size q = p^r exceeds supported bound");
    }
    q_ = static_cast<int>(q);

    add_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_table_.assign(q_, 0);
    for (Fq a = 0; a < static_cast<Fq>(q_); ++a) {
        neg_table_[a] = neg_slow(a);
        for (Fq b = a; b < static_cast<Fq>(q_); ++b) {
            Fq s = add_slow(a, b);
            add_table_[a * q_ + b] = s;
            add_table_[b * q_ + a] = s;
            Fq c = mul_slow(a, b);
            mul_table_[a * q_ + b] = c;
            mul_table_[b * q_ + a] = c;
        }
    }

    inv_table_.assign(q_, 0);
    for (Fq a = 1; a < static_cast<Fq>(q_); ++a) {
        for (Fq b = 1; b < static_cast<Fq>(q_); ++b)
            if (mul_table_[a * q_ + b] == 1) {
                inv_table_[a] = b;
                break;
            }
        if (inv_table_[a] == 0) throw domain_error("modulus is not irreducible");
    }

    trace_table_.assign(q_, 0);
    for (Fq a = 0; a < static_cast<Fq>(q_); ++a) {
        Fq acc = 0, t = a;
        for (int i = 0; i < r_; ++i) {
            acc = add(acc, t);
            Fq tp = 1;
            for (int j = 0; j < p_; ++j) tp = mul_table_[tp * q_ + t];
            t = tp;
        }
        // the trace lies in the prime subfield: coordinates (c0, 0, ..., 0)
        if (acc >= static_cast<Fq>(p_)) throw domain_error("trace left the prime subfield");
        trace_table_[a] = static_cast<int>(acc);
    }
}

Fq Field::mul_slow(Fq a, Fq b) const {
    // coordinate vectors multiplied as polynomials, reduced mod the modulus
    std::vector<int> av = coords(a), bv = coords(b);
    std::vector<int> prod(2 * r_ - 1, 0);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            prod[i + j] = (prod[i + j] + av[i] * bv[j]) % p_;
    if (r_ > 1) {
        for (int k = 2 * r_ - 2; k >= r_; --k) {
            int c = prod[k];
            if (c == 0) continue;
            prod[k] = 0;
            for (int i = 0; i < r_; ++i)
                prod[k - r_ + i] = ((prod[k - r_ + i] - c * modulus_[i]) % p_ + p_) % p_;
        }
    }
    Fq out = 0, w = 1;
    for (int i = 0; i < r_; ++i) {
        out += static_cast<Fq>(prod[i]) * w;
        w *= p_;
    }
    return out;
}

Fq Field::add_slow(Fq a, Fq b) const {
    Fq out = 0, w = 1;
    for (int i = 0; i < r_; ++i) {
        Fq s = (a % p_ + b % p_) % p_;
        out += s * w;
        w *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

Fq Field::neg_slow(Fq a) const {
    Fq out = 0, w = 1;
    for (int i = 0; i < r_; ++i) {
        Fq s = (p_ - a % p_) % p_;
        out += s * w;
        w *= p_;
        a /= p_;
    }
    return out;
}

Fq Field::inv(Fq a) const {
    if (a == 0) throw domain_error("inversion of zero field element");
    return inv_table_[a];
}

Fq Field::pow(Fq a, long long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    Fq r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

Fq Field::from_int(long long v) const {
    long long m = ((v % p_) + p_) % p_;
    return static_cast<Fq>(m);
}

Fq Field::from_coords(std::span<const int> coords) const {
    if (static_cast<int>(coords.size()) > r_)
        throw domain_error("coordinate vector longer than extension degree");
    Fq out = 0, w = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        int c = ((coords[i] % p_) + p_) % p_;
        out += static_cast<Fq>(c) * w;
        w *= p_;
    }
    return out;
}

std::vector<int> Field::coords(Fq a) const {
    std::vector<int> v(r_);
    for (int i = 0; i < r_; ++i) {
        v[i] = static_cast<int>(a % p_);
        a /= p_;
    }
    return v;
}

int Field::trace(Fq a) const { return trace_table_[a]; }

std::string Field::coeff_str(Fq a) const {
    if (r_ == 1) return std::to_string(a);
    std::string s = "[";
    auto v = coords(a);
    for (int i = 0; i < r_; ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

namespace {

std::mutex registry_mutex;
std::map<std::pair<std::pair<int, int>, std::vector<int>>,
         std::unique_ptr<Field>>& registry() {
    static auto* m = new std::map<std::pair<std::pair<int, int>, std::vector<int>>,
                                  std::unique_ptr<Field>>();
    return *m;
}

} // namespace

const Field& Field::intern(int p, int r, std::vector<int> modulus) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto key = std::make_pair(std::make_pair(p, r), modulus);
    auto it = registry().find(key);
    if (it == registry().end()) {
        auto f = std::unique_ptr<Field>(new Field(p, r, std::move(modulus)));
        it = registry().emplace(std::move(key), std::move(f)).first;
    }
    return *it->second;
}

const Field& Field::get(int p, int r) {
    if (!is_prime(p)) throw domain_error("p is not prime");
    if (r < 1) throw domain_error("extension degree must be >= 1");
    if (r == 1) return intern(p, 1, {});
    return intern(p, r, default_modulus(p, r));
}

const Field& Field::get(int p, int r, const std::vector<int>& modulus) {
    if (!is_prime(p)) throw domain_error("p is not prime");
    if (r < 1) throw domain_error("extension degree must be >= 1");
    if (r == 1 && modulus.empty()) return intern(p, 1, {});
    Zp m = modulus;
    for (auto& c : m) c = ((c % p) + p) % p;
    zp_trim(m);
    if (static_cast<int>(m.size()) != r + 1)
        throw domain_error("modulus degree does not match extension degree");
    if (m.back() != 1) throw domain_error("modulus must be monic");
    if (!zp_irreducible(m, p)) throw domain_error("modulus is reducible");
    if (r == 1) return intern(p, 1, {});
    return intern(p, r, std::move(m));
}

const Field& Field::get_q(int q) {
    if (q < 2) throw domain_error("q must be at least 2");
    int p = 2;
    while (q % p != 0) {
        ++p;
        if (p > q) throw domain_error("q is not a prime power");
    }
    int r = 0;
    int v = q;
    while (v % p == 0) {
        v /= p;
        ++r;
    }
    if (v != 1) throw domain_error("q is not a prime power");
    return get(p, r);
}

} // namespace qj
