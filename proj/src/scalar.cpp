#include "qbethe/scalar.hpp"

#include <ostream>
#include <sstream>

namespace qbethe {

Scalar Scalar::from_string(const std::string& s) {
    // "num/den" or "num" with optional sign; exact rational only.
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class q(s);
            q.canonicalize();
            return Scalar(q);
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(q);
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ConfigError, "cannot parse scalar '" + s + "'");
    }
}

std::string Scalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.is_rational()) {
        os << s.rat().get_num().get_str();
        if (s.rat().get_den() != 1) os << "/" << s.rat().get_den().get_str();
    } else {
        auto z = s.cplx();
        os << "[" << z.real() << "," << z.imag() << "]";
    }
    return os;
}

} // namespace qbethe
