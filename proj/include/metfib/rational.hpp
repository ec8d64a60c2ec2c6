#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace metfib {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. Normalized: den > 0, gcd(|num|, den) = 1, zero is 0/1.
struct Rational {
	BigInt num = 0;
	BigInt den = 1;

	Rational() = default;
	Rational(long long v) : num(v), den(1) {}
	explicit Rational(BigInt v) : num(std::move(v)), den(1) {}
	Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { normalize(); }

	void normalize() {
		if (den == 0)
			throw std::domain_error("rational with zero denominator");
		if (den < 0) {
			num = -num;
			den = -den;
		}
		BigInt g = gcd(num < 0 ? BigInt(-num) : num, den);
		if (g > 1) {
			num /= g;
			den /= g;
		}
	}

	bool is_zero() const { return num == 0; }
	bool is_integer() const { return den == 1; }
	int sign() const { return num < 0 ? -1 : (num > 0 ? 1 : 0); }
};

inline Rational operator+(const Rational &a, const Rational &b) {
	return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline Rational operator-(const Rational &a, const Rational &b) {
	return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
inline Rational operator*(const Rational &a, const Rational &b) {
	return Rational(a.num * b.num, a.den * b.den);
}
inline Rational operator/(const Rational &a, const Rational &b) {
	if (b.num == 0)
		throw std::domain_error("rational division by zero");
	return Rational(a.num * b.den, a.den * b.num);
}
inline Rational operator-(const Rational &a) { return Rational(-a.num, a.den); }

inline bool operator==(const Rational &a, const Rational &b) {
	return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const Rational &a, const Rational &b) { return !(a == b); }
inline bool operator<(const Rational &a, const Rational &b) {
	return a.num * b.den < b.num * a.den;
}
inline bool operator>(const Rational &a, const Rational &b) { return b < a; }
inline bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }
inline bool operator>=(const Rational &a, const Rational &b) { return !(a < b); }

inline Rational pow(const Rational &base, unsigned long exp) {
	Rational r(1);
	Rational b = base;
	while (exp) {
		if (exp & 1)
			r = r * b;
		b = b * b;
		exp >>= 1;
	}
	return r;
}

inline std::string to_string(const Rational &a) {
	std::string s = a.num.str();
	if (a.den != 1)
		s += "/" + a.den.str();
	return s;
}

// Rational extended with a single point at infinity. Used for distances and
// norms; inf stands for "no finite path". Arithmetic: inf absorbs addition,
// inf - finite = inf, finite - inf is an error. Ordering: inf is the maximum.
struct XRational {
	bool inf = false;
	Rational val;

	XRational() = default;
	XRational(long long v) : val(v) {}
	XRational(Rational r) : val(std::move(r)) {}
	static XRational infinity() {
		XRational x;
		x.inf = true;
		return x;
	}

	bool is_inf() const { return inf; }
	const Rational &finite() const {
		if (inf)
			throw std::domain_error("infinite value where finite expected");
		return val;
	}
};

inline XRational operator+(const XRational &a, const XRational &b) {
	if (a.inf || b.inf)
		return XRational::infinity();
	return XRational(a.val + b.val);
}
inline XRational operator-(const XRational &a, const XRational &b) {
	if (b.inf)
		throw std::domain_error("cannot subtract infinity");
	if (a.inf)
		return XRational::infinity();
	return XRational(a.val - b.val);
}
inline bool operator==(const XRational &a, const XRational &b) {
	if (a.inf || b.inf)
		return a.inf == b.inf;
	return a.val == b.val;
}
inline bool operator!=(const XRational &a, const XRational &b) { return !(a == b); }
inline bool operator<(const XRational &a, const XRational &b) {
	if (b.inf)
		return !a.inf;
	if (a.inf)
		return false;
	return a.val < b.val;
}
inline bool operator>(const XRational &a, const XRational &b) { return b < a; }
inline bool operator<=(const XRational &a, const XRational &b) { return !(b < a); }
inline bool operator>=(const XRational &a, const XRational &b) { return !(a < b); }

inline std::string to_string(const XRational &a) {
	return a.inf ? "inf" : to_string(a.val);
}

// Parses "p", "p/q" or "inf". Throws std::invalid_argument on anything else.
XRational parse_xrational(const std::string &tok);
Rational parse_rational(const std::string &tok);

} // namespace metfib
