#include "tpk/scalar.hpp"

#include <cctype>
#include <charconv>

namespace tpk {

namespace {

bool allDigits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rat ratFromString(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ConfigError("empty numeric literal");

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
      neg = num[0] == '-';
      num = num.substr(1);
    }
    if (!allDigits(num) || !allDigits(den))
      throw ConfigError("bad fraction literal: " + text);
    mpz_class n(num), d(den);
    if (d == 0) throw ConfigError("zero denominator in: " + text);
    Rat q(n, d);
    q.canonicalize();
    if (neg) q = -q;
    return q;
  }

  // Plain decimal with optional exponent.
  std::string digits;
  bool neg = false;
  long fracLen = 0;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  bool sawDigit = false, sawDot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (sawDot) ++fracLen;
      sawDigit = true;
    } else if (ch == '.' && !sawDot) {
      sawDot = true;
    } else if ((ch == 'e' || ch == 'E') && sawDigit) {
      break;
    } else {
      throw ConfigError("bad numeric literal: " + text);
    }
  }
  if (!sawDigit) throw ConfigError("bad numeric literal: " + text);

  long expPart = 0;
  if (i < s.size()) {
    ++i;  // skip the exponent marker
    bool expNeg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) expNeg = s[i++] == '-';
    if (i >= s.size()) throw ConfigError("bad exponent in: " + text);
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ConfigError("bad exponent in: " + text);
      expPart = expPart * 10 + (s[i] - '0');
      if (expPart > 100000) throw ConfigError("exponent out of range: " + text);
    }
    if (expNeg) expPart = -expPart;
  }

  mpz_class numerator(digits);
  mpz_class denominator(1);
  const long shift = expPart - fracLen;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0)
    numerator *= scale;
  else
    denominator = scale;
  Rat q(numerator, denominator);
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

Rat ratFromDouble(double x) {
  if (!std::isfinite(x))
    throw DomainError("non-finite value has no rational reading");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return ratFromString(std::string(buf, res.ptr));
}

std::string ratToString(const Rat& q) { return q.get_str(); }

}  // namespace tpk
