#include "geocover/rational.hpp"

#include "geocover/errors.hpp"

#include <cctype>

namespace geocover {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    if (!body.empty() && body.front() == '-')
        body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    if (!all_digits(num))
        throw InvalidInput("malformed fraction '" + std::string(text) + "'");
    if (slash != std::string_view::npos) {
        std::string_view den = body.substr(slash + 1);
        if (!all_digits(den) || den.front() == '0')
            throw InvalidInput("malformed fraction '" + std::string(text) + "'");
    }
    Rational q(std::string(text), 10);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q)
{
    return q.get_str(10);
}

std::optional<Rational> rational_sqrt(const Rational& q)
{
    if (sgn(q) < 0)
        return std::nullopt;
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Rational root(sqrt(num), sqrt(den));
    root.canonicalize();
    return root;
}

BigInt ceil_of(const Rational& q)
{
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

BigInt floor_of(const Rational& q)
{
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

} // namespace geocover
