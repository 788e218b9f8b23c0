#pragma once

#include <gmpxx.h>

#include <string>

#include "specseq/errors.hpp"

namespace specseq {

/* Coefficient field: the rationals, or a prime field F_p with p < 2^31.
 * A single computation never mixes two fields; every container carries its
 * Field and operations cross-check on entry. */
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(long p);

    bool is_rationals() const { return p_ == 0; }
    long prime_modulus() const { return p_; }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    std::string describe() const { return is_rationals() ? "Q" : "F" + std::to_string(p_); }

private:
    explicit Field(long p) : p_(p) {}
    long p_; // 0 means Q
};

inline void require_same_field(const Field& a, const Field& b, const char* where) {
    if (a != b)
        throw invariant_error(std::string(where) + ": mixed fields " + a.describe() + " vs " + b.describe());
}

/* One field element.  Values are held as exact rationals; over F_p the
 * value is the canonical residue in [0, p) with denominator 1, so equality
 * of scalars is equality of representations in both cases. */
class Scalar {
public:
    Scalar(Field f, const mpq_class& v) : fld_(f), v_(v) { normalize(); }
    Scalar(Field f, long v) : fld_(f), v_(v) { normalize(); }

    static Scalar zero(Field f) { return Scalar(f, 0); }
    static Scalar one(Field f) { return Scalar(f, 1); }
    /* Parse "3/4", "-2", "7" relative to the field. */
    static Scalar parse(Field f, const std::string& text);

    const Field& field() const { return fld_; }
    const mpq_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::string str() const { return v_.get_str(); }

    Scalar operator+(const Scalar& o) const { return bin(o, v_ + o.v_); }
    Scalar operator-(const Scalar& o) const { return bin(o, v_ - o.v_); }
    Scalar operator*(const Scalar& o) const { return bin(o, v_ * o.v_); }
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const { return Scalar(fld_, -v_); }
    Scalar inverse() const;

    bool operator==(const Scalar& o) const { return fld_ == o.fld_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

private:
    Scalar bin(const Scalar& o, mpq_class r) const {
        require_same_field(fld_, o.fld_, "scalar arithmetic");
        return Scalar(fld_, std::move(r));
    }
    void normalize();

    Field fld_;
    mpq_class v_;
};

} // namespace specseq
