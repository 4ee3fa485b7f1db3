#ifndef OSCGAUSS_TESTS_SUPPORT_HPP
#define OSCGAUSS_TESTS_SUPPORT_HPP

#include <gtest/gtest.h>

#include <string>

#include <oscgauss/oscgauss.hpp>

namespace oscgauss::testing {

inline Real R(const std::string& s, const PrecisionContext& ctx) { return ctx.real(s); }

inline Complex C(const std::string& re, const std::string& im, const PrecisionContext& ctx) {
  return {ctx.real(re), ctx.real(im)};
}

/// |a - b| as a double, for assertion messages.
inline double gap(const Complex& a, const Complex& b) { return to_double(dist(a, b)); }
inline double gap(const Real& a, const Real& b) { return to_double(boost::multiprecision::abs(a - b)); }

/// Equally spaced points on a circle, with angles built from exact rationals.
inline std::vector<Complex> circle(const Complex& c, const Real& r, int m, const PrecisionContext& ctx) {
  std::vector<Complex> out;
  Real pi = ctx.pi();
  for (int j = 0; j < m; ++j) out.push_back(c + polar(r, pi * (2 * j + 1) / m));
  return out;
}

}  // namespace oscgauss::testing

#endif  // OSCGAUSS_TESTS_SUPPORT_HPP
