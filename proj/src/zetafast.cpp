#include "qj/zetafast.hpp"

#include <algorithm>

namespace qj {

namespace {

// Laurent value with a floating scale: value = T^exp * sum_i d[i] T^-i,
// d[0] != 0, and only len() mantissa digits are certified. The subspace
// recursion multiplies values whose degrees grow like q^m, so absolute
// floors are useless here; every quantity that leaves this file is a ratio
// of moderate degree.
struct FS {
    bool zero = true;
    long long exp = 0;
    std::vector<Fq> d;

    int len() const { return static_cast<int>(d.size()); }
};

class FSOps {
public:
    FSOps(const Field& F, int mantissa) : f_(F), m_(mantissa) {}

    FS zero() const { return FS{}; }

    FS from_poly(const Poly& p) const {
        if (p.is_zero()) return FS{};
        FS x;
        x.zero = false;
        x.exp = p.degree();
        const int n = std::min(m_, p.degree() + 1);
        x.d.resize(n);
        for (int i = 0; i < n; ++i) x.d[i] = p.coeff(p.degree() - i);
        // a polynomial is exact: pad the known-zero tail below its support
        if (p.degree() + 1 < m_) x.d.resize(m_, 0);
        return x;
    }

    FS mul(const FS& a, const FS& b) const {
        if (a.zero || b.zero) return FS{};
        FS out;
        out.zero = false;
        out.exp = a.exp + b.exp;
        const int n = std::min({m_, a.len(), b.len()});
        out.d.assign(n, 0);
        for (int i = 0; i < std::min(a.len(), n); ++i) {
            if (a.d[i] == 0) continue;
            const int lim = std::min(b.len(), n - i);
            for (int j = 0; j < lim; ++j)
                if (b.d[j] != 0)
                    out.d[i + j] = f_.add(out.d[i + j], f_.mul(a.d[i], b.d[j]));
        }
        return out; // leading digit nonzero since both leads are
    }

    FS add(const FS& a, const FS& b) const {
        if (a.zero) return b;
        if (b.zero) return a;
        const FS& hi = (a.exp >= b.exp) ? a : b;
        const FS& lo = (a.exp >= b.exp) ? b : a;
        const long long shift = hi.exp - lo.exp;
        // certified positions: hi down to exp-hi.len()+1, lo likewise
        const long long lim_hi = hi.len();
        const long long lim_lo = shift + lo.len();
        const int n = static_cast<int>(std::min<long long>(
            {static_cast<long long>(m_), std::min(lim_hi, lim_lo)}));
        std::vector<Fq> d(hi.d.begin(), hi.d.begin() + std::min<int>(n, hi.len()));
        d.resize(n, 0);
        for (int i = 0; i + shift < n && i < lo.len(); ++i)
            d[i + shift] = f_.add(d[i + shift], lo.d[i]);
        // renormalize after cancellation
        int lead = 0;
        while (lead < n && d[lead] == 0) ++lead;
        if (lead == n) {
            // cancelled below the certified window: treat as zero; callers
            // that need more digits retry with a bigger mantissa
            return FS{};
        }
        FS out;
        out.zero = false;
        out.exp = hi.exp - lead;
        out.d.assign(d.begin() + lead, d.end());
        return out;
    }

    FS neg(const FS& a) const {
        FS out = a;
        for (auto& c : out.d) c = f_.neg(c);
        return out;
    }

    FS scale(const FS& a, Fq c) const {
        if (c == 0) return FS{};
        FS out = a;
        for (auto& x : out.d) x = f_.mul(x, c);
        return out;
    }

    FS inv(const FS& a) const {
        if (a.zero) throw domain_error("inversion of zero scaled series");
        FS out;
        out.zero = false;
        out.exp = -a.exp;
        const int n = std::min(m_, a.len());
        out.d.assign(n, 0);
        const Fq lead_inv = f_.inv(a.d[0]);
        out.d[0] = lead_inv;
        for (int j = 1; j < n; ++j) {
            Fq acc = 0;
            for (int i = 1; i <= j; ++i)
                if (a.d[i] != 0 && out.d[j - i] != 0)
                    acc = f_.add(acc, f_.mul(a.d[i], out.d[j - i]));
            out.d[j] = f_.neg(f_.mul(acc, lead_inv));
        }
        return out;
    }

    FS pow(FS a, long long n) const {
        FS r = from_poly(Poly::one(f_));
        while (n > 0) {
            if (n & 1) r = mul(r, a);
            if (n >>= 1) a = mul(a, a);
        }
        return r;
    }

    /// x -> x^q (Frobenius): digits spread by a factor of q.
    FS frob(const FS& a) const {
        if (a.zero) return a;
        FS out;
        out.zero = false;
        out.exp = a.exp * f_.q();
        const int q = f_.q();
        const int keep = std::min<long long>(m_, 1 + (long long)(a.len() - 1) * q);
        out.d.assign(keep, 0);
        for (int i = 0; i < a.len(); ++i) {
            const long long pos = static_cast<long long>(i) * q;
            if (pos >= keep) break;
            out.d[pos] = f_.pow(a.d[i], q);
        }
        return out;
    }

private:
    const Field& f_;
    int m_;
};

// One pass of the subspace recursion at a fixed mantissa; returns false when
// cancellation ate the whole mantissa somewhere (caller retries deeper).
bool run(const Field& F, const std::vector<Poly>& entries, int mantissa,
         FS& beta1, FS& beta2) {
    const FSOps ops(F, mantissa);
    const int q = F.q();
    // e_W coefficients alpha[j] of z^{q^j}; start with W = {0}: e = z
    std::vector<FS> alpha;
    alpha.push_back(ops.from_poly(Poly::one(F)));
    for (const Poly& w : entries) {
        // c = e(w)^{q-1}
        FS wpow = ops.from_poly(w);
        FS ew = ops.zero();
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            ew = ops.add(ew, ops.mul(alpha[j], wpow));
            if (j + 1 < alpha.size()) wpow = ops.frob(wpow);
        }
        if (ew.zero) return false; // full cancellation at this mantissa
        const FS c = ops.pow(ew, q - 1);
        // e_{i+1} = e_i^q - c * e_i
        std::vector<FS> next(alpha.size() + 1);
        for (std::size_t j = 0; j <= alpha.size(); ++j) {
            FS up = (j > 0) ? ops.pow(alpha[j - 1], q) : ops.zero();
            FS keep = (j < alpha.size())
                          ? ops.neg(ops.mul(c, alpha[j]))
                          : ops.zero();
            next[j] = ops.add(up, keep);
            if (next[j].zero && j == 0) return false; // alpha0 never vanishes
        }
        alpha.swap(next);
    }
    if (alpha.size() < 2) {
        beta1 = ops.zero();
        beta2 = ops.zero();
        return true;
    }
    const FS a0inv = ops.inv(alpha[0]);
    beta1 = ops.mul(alpha[1], a0inv);
    beta2 = (alpha.size() >= 3) ? ops.mul(alpha[2], a0inv) : ops.zero();
    return true;
}

LaurentSeries to_series(const Field& F, const FS& x, int P) {
    if (x.zero) return LaurentSeries::zero_to_precision(F, -P);
    if (x.exp > std::numeric_limits<int>::max() / 2 ||
        x.exp < std::numeric_limits<int>::min() / 2)
        throw domain_error("scaled series exponent out of range");
    const int top = static_cast<int>(x.exp);
    if (top < -P) return LaurentSeries::zero_to_precision(F, -P);
    const int floor = std::max(-P, top - x.len() + 1);
    std::vector<Fq> c(top - floor + 1, 0);
    for (int i = 0; i < x.len() && top - i >= floor; ++i)
        c[top - i - floor] = x.d[i];
    return LaurentSeries::from_coeffs(F, floor, false, std::move(c));
}

} // namespace

std::pair<LaurentSeries, LaurentSeries> zeta_pair_linearized(
    const Field& F, const std::vector<Poly>& entries, int P1, int P2) {
    const int q = F.q();
    if (entries.empty())
        return {LaurentSeries::zero_to_precision(F, -P1),
                LaurentSeries::zero_to_precision(F, -P2)};
    const int d0 = entries.front().degree();
    // required relative depths of zeta(q-1) and zeta(q^2-1)
    const int need = std::max(P1 - (q - 1) * d0, P2 - (q * q - 1) * d0) + 2;
    for (int mantissa = std::max(8, need + 8);; mantissa *= 2) {
        FS beta1, beta2;
        if (!run(F, entries, mantissa, beta1, beta2)) continue;
        const FSOps ops(F, mantissa);
        // zeta_monic(n) = -E_n; E_{q-1} = b1, E_{q^2-1} = b2 + (-1)^q b1^{q+1}
        FS e1 = beta1;
        FS corr = ops.pow(beta1, q + 1);
        if (q % 2 == 1) corr = ops.neg(corr);
        FS e2 = ops.add(beta2, corr);
        FS z1 = ops.neg(e1);
        FS z2 = ops.neg(e2);
        // enough certified digits for the requested floors?
        const bool ok1 = z1.zero || z1.exp - z1.len() + 1 <= -P1;
        const bool ok2 = z2.zero || z2.exp - z2.len() + 1 <= -P2;
        if ((ok1 && ok2) || mantissa > 8 * (need + 64))
            return {to_series(F, z1, P1), to_series(F, z2, P2)};
    }
}

} // namespace qj
