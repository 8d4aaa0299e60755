#ifndef LIFTLAB_RATIONAL_FN_HPP
#define LIFTLAB_RATIONAL_FN_HPP

#include <vector>

#include "liftlab/common.hpp"

namespace liftlab::series {

/// Dense integer-coefficient polynomial, ascending powers, no trailing zeros.
class Poly {
  public:
    Poly() = default;
    explicit Poly(Int constant);
    explicit Poly(std::vector<Int> coeffs);

    static Poly monomial(Int coeff, int degree);
    /// n (n-1) ... (n-v+1)
    static Poly falling_factorial(int v);
    /// prod_{l=lo}^{hi-1} (n - l)
    static Poly shifted_product(int lo, int hi);

    const std::vector<Int>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Int& leading() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Int& s) const;
    friend bool operator==(const Poly&, const Poly&) = default;

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;

    Int content() const;      // gcd of coefficients (0 for zero poly)
    Poly primitive() const;   // content removed, leading coefficient > 0

    /// Exact division; throws InvariantViolation if the remainder is nonzero.
    static Poly divide_exact(const Poly& a, const Poly& b);
    /// Primitive polynomial gcd with positive leading coefficient.
    static Poly gcd(Poly a, Poly b);

  private:
    void trim();
    std::vector<Int> c_;
};

/// Normalized quotient of integer polynomials: common factor removed,
/// contents coprime, denominator leading coefficient positive.
class RationalFn {
  public:
    RationalFn() : num_(), den_(Int(1)) {}
    RationalFn(Poly num, Poly den);
    static RationalFn constant(const Rat& q);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant(Rat* value = nullptr) const;

    /// Evaluation of the combinatorial sum is only guaranteed to match the
    /// rational function for n >= this; callers below it must brute-force.
    long long validity_threshold() const { return validity_threshold_; }
    void set_validity_threshold(long long t) { validity_threshold_ = t; }

    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn scaled(const Rat& s) const;
    friend bool operator==(const RationalFn& a, const RationalFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    Rat eval(const Rat& x) const;      // throws std::domain_error on a pole
    Rat eval_at(long long n) const;

    /// Coefficients of the expansion in 1/n up to the given order.
    /// Requires deg num <= deg den (the function is bounded at infinity).
    std::vector<Rat> series_in_inv_n(int order) const;

    /// Vanishing order at n = infinity: deg den - deg num. -1 when zero.
    int vanishing_order() const;

  private:
    Poly num_;
    Poly den_;
    long long validity_threshold_ = 0;
};

/// Truncated power-series helpers over exact rationals.
std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, int order);
std::vector<Rat> series_div(const std::vector<Rat>& a, const std::vector<Rat>& b, int order);

}  // namespace liftlab::series

#endif  // LIFTLAB_RATIONAL_FN_HPP
