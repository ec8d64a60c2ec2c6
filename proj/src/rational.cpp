#include "metfib/rational.hpp"

#include <cctype>

namespace metfib {

static BigInt parse_bigint(const std::string &s) {
	if (s.empty())
		throw std::invalid_argument("empty integer token");
	size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
	if (i == s.size())
		throw std::invalid_argument("bad integer token '" + s + "'");
	for (; i < s.size(); ++i)
		if (!std::isdigit(static_cast<unsigned char>(s[i])))
			throw std::invalid_argument("bad integer token '" + s + "'");
	return BigInt(s);
}

Rational parse_rational(const std::string &tok) {
	auto slash = tok.find('/');
	if (slash == std::string::npos)
		return Rational(parse_bigint(tok), 1);
	BigInt n = parse_bigint(tok.substr(0, slash));
	BigInt d = parse_bigint(tok.substr(slash + 1));
	if (d == 0)
		throw std::invalid_argument("zero denominator in '" + tok + "'");
	return Rational(n, d);
}

XRational parse_xrational(const std::string &tok) {
	if (tok == "inf")
		return XRational::infinity();
	return XRational(parse_rational(tok));
}

} // namespace metfib
