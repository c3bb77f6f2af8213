#ifndef BNF_GAUSSIAN_RATIONAL_HPP
#define BNF_GAUSSIAN_RATIONAL_HPP

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bnf
{

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" into a canonical rational. Throws
// std::invalid_argument on malformed input or a zero denominator.
inline Rational parse_rational(std::string_view s)
{
    auto valid_int = [](std::string_view t, bool allow_sign) {
        if (t.empty()) {
            return false;
        }
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) {
            i = 1;
        }
        if (i == t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') {
                return false;
            }
        }
        return true;
    };
    const auto slash = s.find('/');
    const auto num = s.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    }
    std::string n(num);
    if (n[0] == '+') {
        n.erase(0, 1);
    }
    Rational r{mpz_class(n), mpz_class(std::string(den))};
    if (r.get_den() == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    }
    r.canonicalize();
    return r;
}

// "p/q", or "p" when q == 1.
inline std::string to_string(Rational r)
{
    r.canonicalize();
    return r.get_str();
}

// Exact complex rational re + i*im.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i()
    {
        return {Rational(0), Rational(1)};
    }

    bool is_zero() const
    {
        return sgn(re) == 0 && sgn(im) == 0;
    }
    bool is_real() const
    {
        return sgn(im) == 0;
    }

    GaussianRational conj() const
    {
        return {re, -im};
    }

    GaussianRational &operator+=(const GaussianRational &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &o)
    {
        if (o.is_real()) {
            re *= o.re;
            im *= o.re;
            return *this;
        }
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussianRational &operator/=(const GaussianRational &o)
    {
        if (o.is_zero()) {
            throw std::domain_error("division by zero Gaussian rational");
        }
        if (o.is_real()) {
            re /= o.re;
            im /= o.re;
            return *this;
        }
        const Rational n = o.re * o.re + o.im * o.im;
        Rational r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = std::move(r);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b)
    {
        return a += b;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b)
    {
        return a -= b;
    }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b)
    {
        return a *= b;
    }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b)
    {
        return a /= b;
    }
    friend GaussianRational operator-(const GaussianRational &a)
    {
        return {-a.re, -a.im};
    }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re == b.re && a.im == b.im;
    }

    std::complex<double> to_complex() const
    {
        return {re.get_d(), im.get_d()};
    }

    friend std::ostream &operator<<(std::ostream &os, const GaussianRational &c)
    {
        if (c.is_real()) {
            return os << c.re;
        }
        return os << '(' << c.re << (sgn(c.im) < 0 ? "" : "+") << c.im << "i)";
    }
};

} // namespace bnf

#endif
