#pragma once

#include "fthresh/polyring.hpp"
#include "oracles.hpp"

inline oracle::Poly to_oracle(const fthresh::Polynomial& f) {
  oracle::Poly out;
  for (const auto& t : f.terms()) {
    oracle::Exps u(t.exponents.begin(), t.exponents.end());
    out[u] = t.coeff;
  }
  return out;
}

inline std::vector<oracle::Poly> to_oracle(const std::vector<fthresh::Polynomial>& fs) {
  std::vector<oracle::Poly> out;
  for (const auto& f : fs) out.push_back(to_oracle(f));
  return out;
}

inline oracle::Exps to_exps(const fthresh::ExponentVector& u) { return oracle::Exps(u.begin(), u.end()); }
