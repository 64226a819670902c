#include "qj/weyl.hpp"

#include <cmath>
#include <complex>

namespace qj {

int char_exponent(const LaurentSeries& g, const Poly& b) {
    if (b.is_zero()) throw domain_error("character index b must be nonzero");
    const Field& F = g.field();
    // c_{-1}(b*g) = sum_k b_k * g_{-1-k}; needs g known down to -1-deg(b)
    Fq c = 0;
    for (int k = 0; k <= b.degree(); ++k) {
        if (b.coeff(k) == 0) continue;
        c = F.add(c, F.mul(b.coeff(k), g.coeff(-1 - k)));
    }
    return F.trace(c);
}

std::uint64_t WeylSum::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

namespace {

double histogram_magnitude(const std::vector<std::uint64_t>& counts,
                           std::uint64_t norm) {
    const double pi = 3.14159265358979323846;
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const double angle = 2.0 * pi * static_cast<double>(j) /
                             static_cast<double>(counts.size());
        acc += static_cast<double>(counts[j]) *
               std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return std::abs(acc) / static_cast<double>(norm);
}

} // namespace

WeylSum weyl_sum(const RealHandle& f, const Poly& b, int d) {
    if (b.is_zero()) throw domain_error("character index b must be nonzero");
    if (d < 0) throw domain_error("degree bound must be nonnegative");
    const Field& F = f.field();
    const int P = b.degree() + d + 2;
    const LaurentSeries fl = f.laurent(P);

    WeylSum out;
    out.d = d;
    out.b = b;
    out.counts.assign(F.p(), 0);
    // exponent of a: Tr(c_{-1}(b*a*f)) = Tr(sum_k (b*a)_k f_{-1-k})
    for_each_poly(F, d, [&](const Poly& a) {
        const Poly ba = b * a;
        Fq c = 0;
        for (int k = 0; k <= ba.degree(); ++k)
            if (ba.coeff(k) != 0) c = F.add(c, F.mul(ba.coeff(k), fl.coeff(-1 - k)));
        ++out.counts[F.trace(c)];
    });
    out.magnitude = histogram_magnitude(out.counts, poly_count_up_to(F, d));
    return out;
}

bool same_character_sum(const std::vector<std::uint64_t>& a,
                        const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size() || a.empty()) return false;
    // sums of p-th roots of unity agree iff count differences are constant
    // (the minimal polynomial of zeta_p is 1 + x + ... + x^(p-1))
    long long shift = static_cast<long long>(a[0]) - static_cast<long long>(b[0]);
    for (std::size_t j = 1; j < a.size(); ++j)
        if (static_cast<long long>(a[j]) - static_cast<long long>(b[j]) != shift)
            return false;
    return true;
}

TelescopingReport telescoping_check(const RealHandle& f,
                                    std::optional<Poly> b, int d_max,
                                    int b_degree_budget) {
    const Field& F = f.field();
    if (!b) {
        // smallest monic b with e0(b f) != 1, i.e. nonzero exponent
        for (int deg = 0; deg <= b_degree_budget && !b; ++deg) {
            for_each_monic(F, deg, [&](const Poly& cand) {
                if (b) return;
                const LaurentSeries fl = f.laurent(cand.degree() + 2);
                if (char_exponent(fl, cand) != 0) b = cand;
            });
        }
        if (!b)
            throw domain_error(
                "no b with a nontrivial character value within the budget "
                "(f may be rational, or the budget too small)");
    }
    if (b->is_zero()) throw domain_error("character index b must be nonzero");

    TelescopingReport report;
    report.b = *b;
    report.delta = b->degree();
    if (d_max < report.delta)
        throw domain_error("d_max must be at least deg(b)");
    for (int d = report.delta; d <= d_max; ++d) {
        WeylSum w = weyl_sum(f, *b, d);
        report.rows.push_back(TelescopingRow{d, w.counts, w.magnitude});
    }
    report.constant = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        if (!same_character_sum(report.rows[0].counts, report.rows[i].counts))
            report.constant = false;
    return report;
}

} // namespace qj
