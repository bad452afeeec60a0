#pragma once

// Exact rational oracle for the spectral weights of (Y*)^2 and the closed
// forms built from them. Every weight is stored as q with c_{l,m}^2 = q / pi.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tetra/models.hpp"

namespace tetra::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r)
{
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact value of a finite double.
inline Rational from_double(double v)
{
    int exp = 0;
    const double mant = std::frexp(v, &exp);
    // 53-bit mantissa as an integer
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational r{Integer(scaled)};
    exp -= 53;
    if (exp >= 0)
        r *= Rational(Integer(1) << exp);
    else
        r /= Rational(Integer(1) << -exp);
    return r;
}

inline Integer factorial(int n)
{
    Integer f = 1;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

/// Polynomial in x with rational coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    static Polynomial monomial(int degree, Rational coeff = 1)
    {
        std::vector<Rational> c(static_cast<std::size_t>(degree + 1), Rational(0));
        c.back() = coeff;
        return Polynomial(std::move(c));
    }

    /// Legendre P_l by (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
    static Polynomial legendre(int l)
    {
        Polynomial p0({Rational(1)});
        if (l == 0)
            return p0;
        Polynomial p1 = monomial(1);
        for (int k = 1; k < l; ++k) {
            Polynomial next = (monomial(1, Rational(2 * k + 1)) * p1 - Polynomial({Rational(k)}) * p0) *
                              Rational(1, k + 1);
            p0 = std::move(p1);
            p1 = std::move(next);
        }
        return p1;
    }

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return c_; }

    [[nodiscard]] Polynomial derivative(int times = 1) const
    {
        Polynomial p = *this;
        for (int t = 0; t < times; ++t) {
            if (p.c_.size() <= 1)
                return Polynomial({Rational(0)});
            std::vector<Rational> d(p.c_.size() - 1);
            for (std::size_t k = 1; k < p.c_.size(); ++k)
                d[k - 1] = p.c_[k] * Rational(static_cast<long long>(k));
            p = Polynomial(std::move(d));
        }
        return p;
    }

    /// Integral over [-1, 1].
    [[nodiscard]] Rational integrate_symmetric() const
    {
        Rational s = 0;
        for (std::size_t k = 0; k < c_.size(); k += 2)
            s += c_[k] * Rational(2, static_cast<long long>(k + 1));
        return s;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(Polynomial a, const Rational& s)
    {
        for (auto& v : a.c_)
            v *= s;
        return a;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            c[i] += b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * Rational(-1); }

    [[nodiscard]] Polynomial pow(int e) const
    {
        Polynomial r({Rational(1)});
        for (int k = 0; k < e; ++k)
            r = r * *this;
        return r;
    }

private:
    void trim()
    {
        while (c_.size() > 1 && c_.back() == 0)
            c_.pop_back();
        if (c_.empty())
            c_.push_back(Rational(0));
    }

    std::vector<Rational> c_{Rational(0)};
};

/// c_{l,m}^2 = q / pi with the sign of c_{l,m}.
struct WeightEntry {
    int l = 0;
    int m = 0;
    Rational q;
    int sign = 0;
};

class WeightTable {
public:
    explicit WeightTable(std::vector<WeightEntry> entries) : entries_(std::move(entries)) {}

    [[nodiscard]] const std::vector<WeightEntry>& entries() const noexcept { return entries_; }

    [[nodiscard]] const WeightEntry& at(int l, int m) const
    {
        for (const auto& e : entries_)
            if (e.l == l && e.m == m)
                return e;
        throw std::out_of_range("WeightTable: no entry (" + std::to_string(l) + "," + std::to_string(m) + ")");
    }

    /// Sum over m of q at degree l.
    [[nodiscard]] Rational degree_sum(int l) const
    {
        Rational s = 0;
        for (const auto& e : entries_)
            if (e.l == l)
                s += e.q;
        return s;
    }

    /// Floating c_{l,m} = sign sqrt(q / pi).
    [[nodiscard]] double coefficient(int l, int m) const
    {
        const auto& e = at(l, m);
        return e.sign * std::sqrt(to_double(e.q) / std::numbers::pi);
    }

private:
    std::vector<WeightEntry> entries_;
};

/// Exact expansion of (Y*)^2 = (105/16pi) x^2 (1-x^2)^2 cos^2(2 phi) over
/// R_l^{m,cos}, l in {0,2,4,6}, m in {0,4}, x = sin(theta).
///
/// c_{l,m} = N^2 K_{lm} I_{lm} Phi_m with
///   N^2      = 105 / (16 pi)
///   K_{lm}^2 = (2l+1)(l-m)! / (2 pi (1+δ_{m0}) (l+m)!)
///   I_{lm}   = ∫ x^2 (1-x^2)^2 (1-x^2)^{m/2} d^m P_l/dx^m dx
///   Phi_m    = ∫ cos^2(2 phi) cos(m phi) dphi = 2 pi {1/2, 1/4}
/// so c^2 pi = (105/16)^2 (2l+1)(l-m)!/(2(1+δ)(l+m)!) I^2 (2 avg)^2.
inline WeightTable compute_weight_table()
{
    const Polynomial x2 = Polynomial::monomial(2);
    const Polynomial oneMinusX2({Rational(1), Rational(0), Rational(-1)});
    const Polynomial source = x2 * oneMinusX2.pow(2);
    const Rational n4 = Rational(105, 16) * Rational(105, 16);

    std::vector<WeightEntry> out;
    for (int l : {0, 2, 4, 6}) {
        for (int m : {0, 4}) {
            if (m > l)
                continue;
            const Polynomial assoc = oneMinusX2.pow(m / 2) * Polynomial::legendre(l).derivative(m);
            const Rational I = (source * assoc).integrate_symmetric();
            const Rational avg = (m == 0) ? Rational(1, 2) : Rational(1, 4);
            const Rational k2pi = Rational(Integer(2 * l + 1) * factorial(l - m), Integer(2 * (m == 0 ? 2 : 1)) * factorial(l + m));
            const Rational q = n4 * k2pi * I * I * (2 * avg) * (2 * avg);
            out.push_back({l, m, q, I > 0 ? 1 : (I < 0 ? -1 : 0)});
        }
    }
    return WeightTable(std::move(out));
}

/// ∬ (Y*)^4 dσ = Σ c^2 (Parseval), as q with value q / pi.
inline Rational quartic_integral(const WeightTable& t)
{
    Rational s = 0;
    for (const auto& e : t.entries())
        s += e.q;
    return s;
}
inline Rational quartic_integral() { return quartic_integral(compute_weight_table()); }

/// Σ c^2 / (12 - l(l+1)) as q with value q / pi.
inline Rational resolvent_sum(const WeightTable& t)
{
    Rational s = 0;
    for (const auto& e : t.entries())
        s += e.q / Rational(12 - e.l * (e.l + 1));
    return s;
}
inline Rational resolvent_sum() { return resolvent_sum(compute_weight_table()); }

/// Constants as printed in the source literature, kept for comparison with
/// the computed table.
struct PublishedConstants {
    Rational c00 = Rational(1, 4);
    Rational degree4 = Rational(189, 1936);
    Rational degree6 = Rational(5111, 25168);
    Rational resolvent = Rational(5621, 3020160);
};

/// λ2 = numerator / (pi sqrt(radicand)); radicand = 1 except for the
/// polynomial model where sqrt(radicand) = λ*.
struct Lambda2Exact {
    Rational numerator;
    Rational radicand = 1;

    [[nodiscard]] double value() const
    {
        return to_double(numerator) / (std::numbers::pi * std::sqrt(to_double(radicand)));
    }
    [[nodiscard]] int sign() const { return numerator > 0 ? 1 : (numerator < 0 ? -1 : 0); }
    [[nodiscard]] std::string str() const
    {
        if (radicand == 1)
            return "(" + to_string(numerator) + ")/pi";
        return "(" + to_string(numerator) + ")/(pi*sqrt(" + to_string(radicand) + "))";
    }
};

/// Closed-form λ2 per model, assembled from the weight table.
inline Lambda2Exact lambda2_exact(const ModelSpec& spec, const WeightTable& t)
{
    const Rational quartic = quartic_integral(t);
    switch (spec.kind) {
    case ModelKind::sine: return {2 * quartic, 1};
    case ModelKind::sinh: return {-2 * quartic, 1};
    case ModelKind::polynomial: {
        spec.validate();
        const Rational mu = from_double(spec.mu);
        const Rational mu1 = from_double(spec.mu1);
        // -(1/(6 λ*)) [Σ c^2 + 6 mu Σ c^2/(12 - l(l+1))]
        return {-(quartic + 6 * mu * resolvent_sum(t)) / 6, mu / (3 * mu1)};
    }
    case ModelKind::liouville: {
        // 12 Σ_{l>=1} (-6 c^2 / (12 - l(l+1))) + 2 Σ c^2; the mean mode is filtered out
        Rational s = 0;
        for (const auto& e : t.entries())
            if (e.l >= 1)
                s += Rational(-72) * e.q / Rational(12 - e.l * (e.l + 1));
        return {s + 2 * quartic, 1};
    }
    }
    throw std::logic_error("lambda2_exact: unreachable");
}

inline Lambda2Exact lambda2_exact(const ModelSpec& spec) { return lambda2_exact(spec, compute_weight_table()); }

} // namespace tetra::exact
