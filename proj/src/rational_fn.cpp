#include "liftlab/rational_fn.hpp"

#include <stdexcept>

namespace liftlab::series {

Poly::Poly(Int constant) {
    if (constant != 0) c_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(Int coeff, int degree) {
    if (coeff == 0) return Poly();
    std::vector<Int> c(static_cast<size_t>(degree) + 1, Int(0));
    c.back() = std::move(coeff);
    return Poly(std::move(c));
}

Poly Poly::falling_factorial(int v) { return shifted_product(0, v); }

Poly Poly::shifted_product(int lo, int hi) {
    Poly p(Int(1));
    for (int l = lo; l < hi; ++l) p = p * Poly({Int(-l), Int(1)});
    return p;
}

const Int& Poly::leading() const {
    if (c_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Int> out(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Int> out(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
    return Poly(std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Int> out(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(out));
}

Poly Poly::operator*(const Int& s) const {
    if (s == 0) return Poly();
    std::vector<Int> out = c_;
    for (Int& c : out) c *= s;
    return Poly(std::move(out));
}

Int Poly::eval(const Int& x) const {
    Int acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

Int Poly::content() const {
    Int g(0);
    for (const Int& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::primitive() const {
    if (is_zero()) return Poly();
    Int g = content();
    if (leading() < 0) g = -g;
    std::vector<Int> out = c_;
    for (Int& c : out) c /= g;
    return Poly(std::move(out));
}

Poly Poly::divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::logic_error("polynomial division by zero");
    std::vector<Int> rem = a.c_;
    if (a.degree() < b.degree()) {
        if (a.is_zero()) return Poly();
        throw InvariantViolation("polynomial division is not exact");
    }
    std::vector<Int> quo(static_cast<size_t>(a.degree() - b.degree()) + 1, Int(0));
    for (int d = a.degree(); d >= b.degree();) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[static_cast<size_t>(d)].get_mpz_t(),
                    b.leading().get_mpz_t());
        if (r != 0) throw InvariantViolation("polynomial division is not exact");
        const int shift = d - b.degree();
        quo[static_cast<size_t>(shift)] = q;
        for (int i = 0; i <= b.degree(); ++i)
            rem[static_cast<size_t>(i + shift)] -= q * b.c_[static_cast<size_t>(i)];
        while (d >= 0 && rem[static_cast<size_t>(d)] == 0) --d;
    }
    for (const Int& c : rem)
        if (c != 0) throw InvariantViolation("polynomial division is not exact");
    return Poly(std::move(quo));
}

Poly Poly::gcd(Poly a, Poly b) {
    a = a.primitive();
    b = b.primitive();
    while (!b.is_zero()) {
        if (a.degree() < b.degree()) {
            std::swap(a, b);
            continue;
        }
        // Pseudo-remainder: r := lb*r - r_lead * x^shift * b keeps integer
        // coefficients; the primitive part removes the extra lb factors.
        const Int lb = b.leading();
        Poly r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const Poly sub = (b * r.leading()) * monomial(Int(1), r.degree() - b.degree());
            r = r * lb - sub;
        }
        a = b;
        b = r.primitive();
    }
    return a.primitive();
}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::logic_error("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(Int(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0 || g.leading() != 1) {
        num_ = Poly::divide_exact(num_, g);
        den_ = Poly::divide_exact(den_, g);
    }
    Int cn = num_.content();
    Int cd = den_.content();
    Int c;
    mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (den_.leading() < 0) c = -c;
    if (c != 1) {
        std::vector<Int> ncs = num_.coeffs(), dcs = den_.coeffs();
        for (Int& x : ncs) x /= c;
        for (Int& x : dcs) x /= c;
        num_ = Poly(std::move(ncs));
        den_ = Poly(std::move(dcs));
    }
}

RationalFn RationalFn::constant(const Rat& q) {
    return RationalFn(Poly(Int(q.get_num())), Poly(Int(q.get_den())));
}

bool RationalFn::is_constant(Rat* value) const {
    if (num_.degree() > 0 || den_.degree() > 0) return false;
    if (value) {
        if (num_.is_zero())
            *value = 0;
        else
            *value = Rat(num_.leading(), den_.leading());
    }
    return true;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    RationalFn out(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    out.validity_threshold_ = std::max(validity_threshold_, o.validity_threshold_);
    return out;
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
    RationalFn out(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    out.validity_threshold_ = std::max(validity_threshold_, o.validity_threshold_);
    return out;
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
    RationalFn out(num_ * o.num_, den_ * o.den_);
    out.validity_threshold_ = std::max(validity_threshold_, o.validity_threshold_);
    return out;
}

RationalFn RationalFn::scaled(const Rat& s) const {
    RationalFn out(num_ * Int(s.get_num()), den_ * Int(s.get_den()));
    out.validity_threshold_ = validity_threshold_;
    return out;
}

Rat RationalFn::eval(const Rat& x) const {
    const Rat d = den_.eval(x);
    if (d == 0) throw std::domain_error("pole of rational function");
    Rat out = num_.eval(x) / d;
    out.canonicalize();
    return out;
}

Rat RationalFn::eval_at(long long n) const { return eval(Rat(static_cast<long>(n))); }

std::vector<Rat> RationalFn::series_in_inv_n(int order) const {
    if (num_.is_zero()) return std::vector<Rat>(static_cast<size_t>(order) + 1, Rat(0));
    const int dn = num_.degree();
    const int dd = den_.degree();
    if (dn > dd)
        throw InvariantViolation("series in 1/n requires a function bounded at infinity");
    std::vector<Rat> rn(static_cast<size_t>(order) + 1, Rat(0));
    std::vector<Rat> rd(static_cast<size_t>(order) + 1, Rat(0));
    for (int i = 0; i <= dn; ++i)
        if (dd - i <= order) rn[static_cast<size_t>(dd - i)] = Rat(num_.coeffs()[static_cast<size_t>(i)]);
    for (int i = 0; i <= dd; ++i)
        if (dd - i <= order) rd[static_cast<size_t>(dd - i)] = Rat(den_.coeffs()[static_cast<size_t>(i)]);
    return series_div(rn, rd, order);
}

int RationalFn::vanishing_order() const {
    if (num_.is_zero()) return -1;
    return den_.degree() - num_.degree();
}

std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, int order) {
    std::vector<Rat> out(static_cast<size_t>(order) + 1, Rat(0));
    for (size_t i = 0; i < a.size() && i <= static_cast<size_t>(order); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(order); ++j) {
            if (b[j] == 0) continue;
            Rat t = a[i] * b[j];
            t.canonicalize();
            out[i + j] += t;
        }
    }
    for (Rat& q : out) q.canonicalize();
    return out;
}

std::vector<Rat> series_div(const std::vector<Rat>& a, const std::vector<Rat>& b, int order) {
    if (b.empty() || b[0] == 0) throw std::domain_error("series division by zero constant term");
    std::vector<Rat> out(static_cast<size_t>(order) + 1, Rat(0));
    for (int i = 0; i <= order; ++i) {
        Rat acc = static_cast<size_t>(i) < a.size() ? a[static_cast<size_t>(i)] : Rat(0);
        for (int j = 1; j <= i && static_cast<size_t>(j) < b.size(); ++j)
            acc -= b[static_cast<size_t>(j)] * out[static_cast<size_t>(i - j)];
        out[static_cast<size_t>(i)] = acc / b[0];
        out[static_cast<size_t>(i)].canonicalize();
    }
    return out;
}

}  // namespace liftlab::series
