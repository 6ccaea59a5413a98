#include "compop/funcspace.hpp"

#include "compop/errors.hpp"

#include <cmath>

namespace compop {

namespace {

using boost::multiprecision::cpp_int;

std::optional<cpp_int> exact_isqrt(const cpp_int& n) {
    if (n < 0) return std::nullopt;
    cpp_int root = boost::multiprecision::sqrt(n);
    if (root * root != n) return std::nullopt;
    return root;
}

} // namespace

std::string to_string(const Rational& r) {
    return r.str();
}

std::string to_string(const ComplexRational& z) {
    if (z.im == 0) return to_string(z.re);
    if (z.re == 0) return to_string(z.im) + "i";
    return to_string(z.re) + (z.im < 0 ? "-" : "+") + to_string(z.im < 0 ? Rational(-z.im) : z.im) + "i";
}

std::optional<Rational> exact_sqrt(const Rational& r) {
    auto num = exact_isqrt(boost::multiprecision::numerator(r));
    auto den = exact_isqrt(boost::multiprecision::denominator(r));
    if (!num || !den) return std::nullopt;
    return Rational(*num, *den);
}

std::optional<Rational> SupNorm::exact() const {
    return exact_sqrt(squared);
}

double SupNorm::approx() const {
    return std::sqrt(squared.convert_to<double>());
}

std::string SupNorm::render() const {
    if (auto e = exact()) return to_string(*e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", approx());
    return "sqrt(" + to_string(squared) + ") ~ " + buf;
}

ComplexRational BoundedFunction::operator()(const Point& v) const {
    auto it = values_.find(v);
    return it == values_.end() ? ComplexRational{} : it->second;
}

void BoundedFunction::set(const Point& v, const ComplexRational& value) {
    if (value.is_zero()) {
        values_.erase(v);
    } else {
        values_[v] = value;
    }
}

BoundedFunction operator+(const BoundedFunction& a, const BoundedFunction& b) {
    BoundedFunction out = a;
    for (const auto& [p, z] : b.values_) out.set(p, a(p) + z);
    return out;
}

BoundedFunction operator-(const BoundedFunction& a, const BoundedFunction& b) {
    BoundedFunction out = a;
    for (const auto& [p, z] : b.values_) out.set(p, a(p) - z);
    return out;
}

BoundedFunction operator*(const ComplexRational& s, const BoundedFunction& f) {
    BoundedFunction out;
    for (const auto& [p, z] : f.values_) out.set(p, s * z);
    return out;
}

SupNorm sup_norm(const BoundedFunction& f) {
    SupNorm norm;
    for (const auto& [p, z] : f.support()) {
        Rational m = z.squared_modulus();
        if (m > norm.squared) norm.squared = m;
    }
    return norm;
}

BoundedFunction chi(const Point& w) {
    BoundedFunction f;
    f.set(w, 1);
    return f;
}

BoundedFunction difference_witness(const SelfMap& phi, const SelfMap& psi, const Point& w) {
    require_same_space(phi, psi);
    const Point a = phi(w);
    const Point b = psi(w);
    if (a == b) {
        throw PreconditionError("difference_witness needs phi(w) != psi(w) at w = " + to_string(w));
    }
    return chi(a) - chi(b);
}

RestrictedEvaluation operator_apply_restricted(const SelfMap& phi, const BoundedFunction& f,
                                               std::uint64_t max_length) {
    RestrictedEvaluation out;
    for (const auto& v : phi.space().points_up_to(max_length)) {
        const Point w = phi(v);
        if (!f.support().contains(w)) continue;
        ComplexRational value = f(w);
        Rational m = value.squared_modulus();
        if (m > out.max_modulus.squared) out.max_modulus.squared = m;
        out.values.emplace_back(v, std::move(value));
    }
    return out;
}

RestrictedEvaluation difference_apply_on(const SelfMap& phi, const SelfMap& psi, const BoundedFunction& f,
                                         std::span<const Point> domain) {
    require_same_space(phi, psi);
    RestrictedEvaluation out;
    const auto& support = f.support();
    for (const auto& v : domain) {
        const Point a = phi(v);
        const Point b = psi(v);
        if (a == b || (!support.contains(a) && !support.contains(b))) continue;
        ComplexRational value = f(a) - f(b);
        if (value.is_zero()) continue;
        Rational m = value.squared_modulus();
        if (m > out.max_modulus.squared) out.max_modulus.squared = m;
        out.values.emplace_back(v, std::move(value));
    }
    return out;
}

RestrictedEvaluation difference_apply_restricted(const SelfMap& phi, const SelfMap& psi,
                                                 const BoundedFunction& f, std::uint64_t max_length) {
    const auto domain = phi.space().points_up_to(max_length);
    return difference_apply_on(phi, psi, f, domain);
}

} // namespace compop
