// Law suites. Failures carry the first counterexample so a broken instance
// prints something actionable rather than just "associativity: failed".

#include "semigraph/laws.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include <gmpxx.h>

#include "semigraph/bc.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/natpoly.hpp"

namespace semigraph {

namespace {

// Splits "f1,f2(a,b),f3" at top-level commas.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double small_double(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
}

ValueGen natpoly_gen(int n_vars) {
  return [n_vars](std::mt19937_64& rng) -> Value {
    std::uniform_int_distribution<int> n_terms(0, 3), coeff(0, 3), expo(0, 2);
    NatPoly p = natpoly_zero(n_vars);
    const int terms = n_terms(rng);
    for (int t = 0; t < terms; ++t) {
      NatPoly mono = natpoly_const(n_vars, coeff(rng));
      for (int v = 0; v < n_vars; ++v) {
        const int e = expo(rng);
        for (int i = 0; i < e; ++i)
          mono = natpoly_mul(mono, natpoly_var(n_vars, v));
      }
      p = natpoly_add(p, mono);
    }
    return p;
  };
}

ValueGen tensor_value_gen(const Semialgebra& a) {
  ValueGen scalar_gen = default_value_gen(a.scalar());
  return [a, scalar_gen](std::mt19937_64& rng) -> Value {
    TensorValue t = a.zero();
    std::uniform_int_distribution<int> idx(0, a.dim() - 1);
    std::uniform_int_distribution<int> n_terms(0, std::min(a.dim(), 3));
    const int terms = n_terms(rng);
    for (int i = 0; i < terms; ++i) {
      const Value c = scalar_gen(rng);
      if (!a.scalar().is_zero(c)) t.coeffs[idx(rng)] = c;
    }
    return t;
  };
}

}  // namespace

ValueGen default_value_gen(const Semiring& s) {
  const std::string& name = s.name();
  if (name == "real")
    return [](std::mt19937_64& rng) -> Value { return small_double(rng); };
  if (name == "rational")
    return [](std::mt19937_64& rng) -> Value {
      std::uniform_int_distribution<int> num(-8, 8), den(1, 8);
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      return q;
    };
  if (name == "logreal" || name == "maxplus")
    return [](std::mt19937_64& rng) -> Value {
      // Carrier is a log-domain / tropical double with -inf as the zero.
      if (std::uniform_int_distribution<int>(0, 7)(rng) == 0)
        return -std::numeric_limits<double>::infinity();
      return small_double(rng);
    };
  if (name == "complex2")
    return [](std::mt19937_64& rng) -> Value {
      return std::complex<double>(small_double(rng), small_double(rng));
    };
  if (name.rfind("natpoly(", 0) == 0) {
    const int n_vars =
        std::atoi(name.substr(8, name.size() - 9).c_str());
    return natpoly_gen(n_vars);
  }
  if (name.rfind("bc(", 0) == 0) {
    auto parts = split_top_level(name.substr(3, name.size() - 4));
    const int order = std::atoi(parts.back().c_str());
    parts.pop_back();
    std::string base_name = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) base_name += "," + parts[i];
    Semiring base = semiring_instance(base_name);
    ValueGen base_gen = default_value_gen(base);
    return [order, base_gen](std::mt19937_64& rng) -> Value {
      std::vector<Value> comps;
      comps.reserve(order + 1);
      for (int i = 0; i <= order; ++i) comps.push_back(base_gen(rng));
      return BCValue{std::move(comps)};
    };
  }
  if (name.rfind("tensor(", 0) == 0)
    return tensor_value_gen(semialgebra_instance(name));
  throw Error("UnknownInstance", "no value generator for '" + name + "'");
}

namespace {

struct LawCheck {
  std::string law;
  // Receives three random values; returns empty on pass, else the detail.
  std::function<std::string(const Value&, const Value&, const Value&)> check;
};

std::vector<LawReport> run_laws(const std::vector<LawCheck>& checks,
                                const ValueGen& gen, int cases,
                                std::mt19937_64& rng) {
  std::vector<LawReport> reports;
  for (const auto& lc : checks) reports.push_back({lc.law, 0, true, ""});
  for (int i = 0; i < cases; ++i) {
    const Value a = gen(rng), b = gen(rng), c = gen(rng);
    for (std::size_t j = 0; j < checks.size(); ++j) {
      if (!reports[j].passed) continue;
      std::string detail = checks[j].check(a, b, c);
      ++reports[j].cases;
      if (!detail.empty()) {
        reports[j].passed = false;
        reports[j].detail = detail;
      }
    }
  }
  return reports;
}

std::vector<LawCheck> semiring_law_checks(const Semiring& s) {
  auto fail2 = [s](const char* what, const Value& a, const Value& b) {
    return std::string(what) + " at a=" + s.str(a) + ", b=" + s.str(b);
  };
  auto fail3 = [s](const char* what, const Value& a, const Value& b,
                   const Value& c) {
    return std::string(what) + " at a=" + s.str(a) + ", b=" + s.str(b) +
           ", c=" + s.str(c);
  };
  return {
      {"add_commutative",
       [s, fail2](const Value& a, const Value& b, const Value&) {
         return s.eq(s.add(a, b), s.add(b, a)) ? "" : fail2("a+b != b+a", a, b);
       }},
      {"add_associative",
       [s, fail3](const Value& a, const Value& b, const Value& c) {
         return s.eq(s.add(s.add(a, b), c), s.add(a, s.add(b, c)))
                    ? ""
                    : fail3("(a+b)+c != a+(b+c)", a, b, c);
       }},
      {"add_identity",
       [s](const Value& a, const Value&, const Value&) {
         return s.eq(s.add(a, s.zero()), a) ? "" : "a+0 != a at a=" + s.str(a);
       }},
      {"mul_commutative",
       [s, fail2](const Value& a, const Value& b, const Value&) {
         return s.eq(s.mul(a, b), s.mul(b, a)) ? "" : fail2("ab != ba", a, b);
       }},
      {"mul_associative",
       [s, fail3](const Value& a, const Value& b, const Value& c) {
         return s.eq(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c)))
                    ? ""
                    : fail3("(ab)c != a(bc)", a, b, c);
       }},
      {"mul_identity",
       [s](const Value& a, const Value&, const Value&) {
         return s.eq(s.mul(a, s.one()), a) ? "" : "a*1 != a at a=" + s.str(a);
       }},
      {"distributive_left",
       [s, fail3](const Value& a, const Value& b, const Value& c) {
         return s.eq(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c)))
                    ? ""
                    : fail3("a(b+c) != ab+ac", a, b, c);
       }},
      {"distributive_right",
       [s, fail3](const Value& a, const Value& b, const Value& c) {
         return s.eq(s.mul(s.add(b, c), a), s.add(s.mul(b, a), s.mul(c, a)))
                    ? ""
                    : fail3("(b+c)a != ba+ca", a, b, c);
       }},
      {"zero_absorbs",
       [s](const Value& a, const Value&, const Value&) {
         return s.eq(s.mul(a, s.zero()), s.zero())
                    ? ""
                    : "a*0 != 0 at a=" + s.str(a);
       }},
  };
}

}  // namespace

std::vector<LawReport> semiring_law_suite(const Semiring& s, const ValueGen& gen,
                                          int cases, std::mt19937_64& rng) {
  return run_laws(semiring_law_checks(s), gen, cases, rng);
}

std::vector<LawReport> semialgebra_law_suite(const Semialgebra& a, int cases,
                                             std::mt19937_64& rng) {
  std::vector<LawReport> reports;
  const int dim = a.dim();

  // Structure constants are checked exhaustively over the basis.
  {
    LawReport rep{"basis_commutative", 0, true, ""};
    for (int u = 0; u < dim && rep.passed; ++u)
      for (int v = 0; v < dim && rep.passed; ++v) {
        ++rep.cases;
        if (!tensor_eq(tensor_mul(a.basis(u), a.basis(v)),
                       tensor_mul(a.basis(v), a.basis(u)))) {
          rep.passed = false;
          rep.detail = "e_" + std::to_string(u) + " e_" + std::to_string(v) +
                       " != e_" + std::to_string(v) + " e_" + std::to_string(u);
        }
      }
    reports.push_back(std::move(rep));
  }
  {
    LawReport rep{"basis_unital", 0, true, ""};
    for (int u = 0; u < dim && rep.passed; ++u) {
      ++rep.cases;
      if (!tensor_eq(tensor_mul(a.one(), a.basis(u)), a.basis(u))) {
        rep.passed = false;
        rep.detail = "1 e_" + std::to_string(u) + " != e_" + std::to_string(u);
      }
    }
    reports.push_back(std::move(rep));
  }
  {
    LawReport rep{"basis_associative", 0, true, ""};
    for (int u = 0; u < dim && rep.passed; ++u)
      for (int v = 0; v < dim && rep.passed; ++v)
        for (int w = 0; w < dim && rep.passed; ++w) {
          ++rep.cases;
          if (!tensor_eq(
                  tensor_mul(tensor_mul(a.basis(u), a.basis(v)), a.basis(w)),
                  tensor_mul(a.basis(u), tensor_mul(a.basis(v), a.basis(w))))) {
            rep.passed = false;
            rep.detail = "(e_" + std::to_string(u) + " e_" + std::to_string(v) +
                         ") e_" + std::to_string(w) + " != e_" +
                         std::to_string(u) + " (e_" + std::to_string(v) +
                         " e_" + std::to_string(w) + ")";
          }
        }
    reports.push_back(std::move(rep));
  }

  // The reconstructed multiplication satisfies the semiring laws on random
  // elements, and multiplication is bilinear over the scalars.
  Semiring view = a.semiring_view();
  ValueGen gen = tensor_value_gen(a);
  for (auto& rep : run_laws(semiring_law_checks(view), gen, cases, rng))
    reports.push_back(std::move(rep));
  {
    LawReport rep{"bilinear_over_scalars", 0, true, ""};
    ValueGen scalar_gen = default_value_gen(a.scalar());
    std::uniform_int_distribution<int> idx(0, dim - 1);
    for (int i = 0; i < cases && rep.passed; ++i) {
      const Value s = scalar_gen(rng), t = scalar_gen(rng);
      const int u = idx(rng), v = idx(rng);
      ++rep.cases;
      const TensorValue lhs =
          tensor_mul(a.basis(u, s), a.basis(v, t));
      const TensorValue rhs = tensor_scale(
          a.scalar().mul(s, t), tensor_mul(a.basis(u), a.basis(v)));
      if (!tensor_eq(lhs, rhs)) {
        rep.passed = false;
        rep.detail = "(s e_" + std::to_string(u) + ")(t e_" +
                     std::to_string(v) + ") != (st)(e_" + std::to_string(u) +
                     " e_" + std::to_string(v) + ") at s=" +
                     a.scalar().str(s) + ", t=" + a.scalar().str(t);
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<LawReport> hom_law_suite(const MonoidHom& hom, int cases,
                                     std::mt19937_64& rng) {
  const Semiring& t = hom.target;
  std::vector<LawReport> reports;
  {
    LawReport rep{"hom_unit", 1, true, ""};
    if (!t.eq(hom.apply(0.0), t.one())) {
      rep.passed = false;
      rep.detail = "f(0) = " + t.str(hom.apply(0.0)) + " != 1";
    }
    reports.push_back(std::move(rep));
  }
  {
    LawReport rep{"hom_additive", 0, true, ""};
    for (int i = 0; i < cases && rep.passed; ++i) {
      const double x = small_double(rng), y = small_double(rng);
      ++rep.cases;
      if (!t.eq(hom.apply(x + y), t.mul(hom.apply(x), hom.apply(y)))) {
        rep.passed = false;
        rep.detail = "f(x+y) != f(x) f(y) at x=" + std::to_string(x) +
                     ", y=" + std::to_string(y);
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

bool all_passed(const std::vector<LawReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const LawReport& r) { return r.passed; });
}

}  // namespace semigraph
