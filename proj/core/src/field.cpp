#include "specseq/field.hpp"

namespace specseq {

Field Field::prime(long p) {
    if (p < 2 || p >= (1L << 31))
        throw invariant_error("prime field modulus out of range: " + std::to_string(p));
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw invariant_error("modulus " + std::to_string(p) + " is not prime");
    return Field(p);
}

void Scalar::normalize() {
    v_.canonicalize();
    if (!fld_.is_rationals()) {
        // reduce into the canonical residue 0 <= v < p (denominators divided out)
        mpz_class p(fld_.prime_modulus());
        mpz_class den = v_.get_den();
        if (den != 1) {
            mpz_class dinv;
            if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
                throw invariant_error("denominator not invertible mod " + p.get_str());
            v_ = mpq_class(v_.get_num() * dinv);
        }
        mpz_class num = v_.get_num() % p;
        if (num < 0)
            num += p;
        v_ = mpq_class(num);
    }
}

Scalar Scalar::inverse() const {
    if (is_zero())
        throw invariant_error("division by zero in " + fld_.describe());
    if (fld_.is_rationals())
        return Scalar(fld_, mpq_class(1) / v_);
    mpz_class p(fld_.prime_modulus()), inv;
    mpz_class num = v_.get_num();
    mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    return Scalar(fld_, mpq_class(inv));
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same_field(fld_, o.fld_, "scalar division");
    return *this * o.inverse();
}

Scalar Scalar::parse(Field f, const std::string& text) {
    if (text.empty())
        throw parse_error("empty scalar literal");
    for (char c : text)
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw parse_error("bad character in scalar literal '" + text + "'");
    try {
        mpq_class v(text);
        return Scalar(f, v);
    } catch (const std::invalid_argument&) {
        throw parse_error("bad scalar literal '" + text + "'");
    }
}

} // namespace specseq
