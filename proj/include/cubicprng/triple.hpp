// Coefficient triples (b, c, d) of monic cubics x^3 + b x^2 + c x + d whose
// unique real root lies in (0, 1).
//
// A triple is admissible when
//   (i)   b^2 - 3c <= 0     f is strictly increasing
//   (ii)  d < 0             f(0) < 0
//   (iii) 1 + b + c + d > 0 f(1) > 0
// and the root is then a cubic algebraic integer. The map from admissible
// triples to roots is a bijection, so a triple is an exact finite name for
// its root.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cubicprng {

using BigInt = mpz_class;

enum class Condition { I = 1, II = 2, III = 3 };

class ConditionViolation : public std::domain_error {
public:
    explicit ConditionViolation(Condition which);
    Condition which() const noexcept { return which_; }

private:
    Condition which_;
};

/// 1 + 2b + 4c + 8d == 0, i.e. f(1/2) == 0. Impossible for an irreducible
/// cubic; seeing it means the state was corrupted.
class HalfRoot : public std::domain_error {
public:
    HalfRoot();
};

class CoeffTriple {
public:
    /// Throws ConditionViolation (first failing condition) or HalfRoot.
    static CoeffTriple validate(BigInt b, BigInt c, BigInt d);

    /// Skips validation. Only for values known admissible by construction
    /// (images of the orbit step); asserted in debug builds.
    static CoeffTriple trusted(BigInt b, BigInt c, BigInt d);

    const BigInt& b() const noexcept { return b_; }
    const BigInt& c() const noexcept { return c_; }
    const BigInt& d() const noexcept { return d_; }

    /// b^2 - 3c, whose sign class (negative / zero) the orbit preserves.
    BigInt discriminant_class() const { return b_ * b_ - 3 * c_; }

    /// 8 f(1/2) = 1 + 2b + 4c + 8d.
    BigInt half_value() const;

    std::string to_string() const;

    friend bool operator==(const CoeffTriple& x, const CoeffTriple& y) {
        return x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

private:
    CoeffTriple(BigInt b, BigInt c, BigInt d) : b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    BigInt b_;
    BigInt c_;
    BigInt d_;
};

/// Checks (i)-(iii) only; returns the first failing condition or 0.
int first_failed_condition(const BigInt& b, const BigInt& c, const BigInt& d);

inline bool is_admissible(const BigInt& b, const BigInt& c, const BigInt& d) {
    return first_failed_condition(b, c, d) == 0;
}

inline CoeffTriple validate_triple(BigInt b, BigInt c, BigInt d) {
    return CoeffTriple::validate(std::move(b), std::move(c), std::move(d));
}

}  // namespace cubicprng
