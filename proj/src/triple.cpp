#include "cubicprng/triple.hpp"

#include <cassert>

namespace cubicprng {

namespace {

const char* condition_message(Condition which) {
    switch (which) {
    case Condition::I:
        return "condition (i) violated: b^2 - 3c > 0";
    case Condition::II:
        return "condition (ii) violated: d >= 0";
    case Condition::III:
        return "condition (iii) violated: 1 + b + c + d <= 0";
    }
    return "condition violated";
}

}  // namespace

ConditionViolation::ConditionViolation(Condition which)
    : std::domain_error(condition_message(which)), which_(which) {}

HalfRoot::HalfRoot() : std::domain_error("1 + 2b + 4c + 8d == 0: polynomial vanishes at 1/2") {}

int first_failed_condition(const BigInt& b, const BigInt& c, const BigInt& d) {
    if (b * b - 3 * c > 0) return 1;
    if (sgn(d) >= 0) return 2;
    if (1 + b + c + d <= 0) return 3;
    return 0;
}

CoeffTriple CoeffTriple::validate(BigInt b, BigInt c, BigInt d) {
    if (int failed = first_failed_condition(b, c, d); failed != 0)
        throw ConditionViolation(static_cast<Condition>(failed));
    CoeffTriple t(std::move(b), std::move(c), std::move(d));
    if (sgn(t.half_value()) == 0) throw HalfRoot();
    return t;
}

CoeffTriple CoeffTriple::trusted(BigInt b, BigInt c, BigInt d) {
    assert(is_admissible(b, c, d));
    return CoeffTriple(std::move(b), std::move(c), std::move(d));
}

BigInt CoeffTriple::half_value() const {
    BigInt v = d_;
    v <<= 1;
    v += c_;
    v <<= 1;
    v += b_;
    v <<= 1;
    v += 1;
    return v;
}

std::string CoeffTriple::to_string() const {
    return "(" + b_.get_str() + ", " + c_.get_str() + ", " + d_.get_str() + ")";
}

}  // namespace cubicprng
