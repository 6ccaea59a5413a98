#pragma once

#include "compop/selfmap.hpp"
#include "compop/space.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace compop {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational parts.
struct ComplexRational {
    Rational re{0};
    Rational im{0};

    ComplexRational() = default;
    ComplexRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
    ComplexRational(int r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    Rational squared_modulus() const { return re * re + im * im; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

std::string to_string(const Rational& r);
std::string to_string(const ComplexRational& z);

/// Exact sup-norm, carried as its square so that moduli never leave Q.
struct SupNorm {
    Rational squared{0};

    // The norm itself when it is rational (e.g. 0, 1, 2, 4).
    std::optional<Rational> exact() const;
    double approx() const;
    std::string render() const;

    friend std::strong_ordering operator<=>(const SupNorm& a, const SupNorm& b) {
        return a.squared < b.squared   ? std::strong_ordering::less
               : b.squared < a.squared ? std::strong_ordering::greater
                                       : std::strong_ordering::equal;
    }
    friend bool operator==(const SupNorm& a, const SupNorm& b) { return a.squared == b.squared; }
};

// Exact square root of a rational that is a perfect square of a rational.
std::optional<Rational> exact_sqrt(const Rational& r);

/// Finitely supported function T -> C; zero off the stored support.
class BoundedFunction {
public:
    BoundedFunction() = default;

    ComplexRational operator()(const Point& v) const;
    void set(const Point& v, const ComplexRational& value);
    const std::map<Point, ComplexRational>& support() const { return values_; }
    bool is_zero() const { return values_.empty(); }

    friend BoundedFunction operator+(const BoundedFunction& a, const BoundedFunction& b);
    friend BoundedFunction operator-(const BoundedFunction& a, const BoundedFunction& b);
    friend BoundedFunction operator*(const ComplexRational& s, const BoundedFunction& f);
    friend bool operator==(const BoundedFunction&, const BoundedFunction&) = default;

private:
    std::map<Point, ComplexRational> values_;
};

SupNorm sup_norm(const BoundedFunction& f);

/// Characteristic function of the single point w.
BoundedFunction chi(const Point& w);

/// chi_{phi(w)} - chi_{psi(w)}; requires phi(w) != psi(w).
BoundedFunction difference_witness(const SelfMap& phi, const SelfMap& psi, const Point& w);

struct RestrictedEvaluation {
    std::vector<std::pair<Point, ComplexRational>> values; // nonzero values only, in domain order
    SupNorm max_modulus;
};

/// (C_phi f)(v) = f(phi(v)) for every v of length <= max_length.
RestrictedEvaluation operator_apply_restricted(const SelfMap& phi, const BoundedFunction& f,
                                               std::uint64_t max_length);

/// ((C_phi - C_psi) f)(v) for every v of length <= max_length.
RestrictedEvaluation difference_apply_restricted(const SelfMap& phi, const SelfMap& psi,
                                                 const BoundedFunction& f, std::uint64_t max_length);

/// Same, over an explicit evaluation domain.
RestrictedEvaluation difference_apply_on(const SelfMap& phi, const SelfMap& psi, const BoundedFunction& f,
                                         std::span<const Point> domain);

} // namespace compop
