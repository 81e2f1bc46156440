#include "semigraph/hom.hpp"

#include <cmath>
#include <complex>

#include "semigraph/bc.hpp"

namespace semigraph {

MonoidHom identity_hom() {
  return {"id", semiring_instance("real"),
          [](double a) -> Value { return a; }};
}

MonoidHom exp_hom() {
  return {"exp", semiring_instance("real"),
          [](double a) -> Value { return std::exp(a); }};
}

MonoidHom cos_sin_hom() {
  return {"cos_sin", semiring_instance("complex2"), [](double a) -> Value {
            return std::complex<double>(std::cos(a), std::sin(a));
          }};
}

MonoidHom powers_hom(int n) {
  Semiring target = semiring_instance("bc(real," + std::to_string(n) + ")");
  return {"powers(" + std::to_string(n) + ")", target,
          [n](double a) -> Value {
            BCValue v;
            v.comps.reserve(n + 1);
            double p = 1.0;
            for (int i = 0; i <= n; ++i) {
              v.comps.emplace_back(p);
              p *= a;
            }
            return v;
          }};
}

}  // namespace semigraph
