#include "eaplan/rational.hpp"

#include <cstdlib>

namespace eaplan {

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(text.substr(0, slash));
    long long d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac = text.size() - dot - 1;
    if (frac == 0 || frac > 18) throw std::invalid_argument("bad decimal literal: " + text);
    long long den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
  return Rational(std::stoll(text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  // Check whether den divides a power of ten.
  long long d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  int k = twos > fives ? twos : fives;
  __int128 scaled = num_;
  for (int i = 0; i < k; ++i) scaled *= 10;
  scaled /= den_;
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits;
  while (scaled > 0) { digits.insert(digits.begin(), char('0' + int(scaled % 10))); scaled /= 10; }
  while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
  digits.insert(digits.size() - k, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return (neg ? "-" : "") + digits;
}

}  // namespace eaplan
