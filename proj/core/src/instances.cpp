#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "semigraph/bc.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/natpoly.hpp"
#include "semigraph/semialgebra.hpp"
#include "semigraph/semiring.hpp"

namespace semigraph {

// Defined here rather than in io.cpp so the low-level instances do not
// depend on the adapter headers io.hpp pulls in.
std::string real_str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

constexpr double kAbsTol = 1e-9;
constexpr double kRelTol = 1e-9;

bool eq_tol(double a, double b) {
  if (a == b) return true;  // covers equal infinities
  if (std::isinf(a) || std::isinf(b)) return false;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= kAbsTol + kRelTol * scale;
}

double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end)))
    ++end;
  if (end == begin || (end && *end != '\0'))
    throw ParseError("entry", "'" + text + "' is not a decimal number");
  return v;
}

using Cplx = std::complex<double>;

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Splits "head(a,b(c,d),e)" into head and top-level arguments. Returns
// false when s contains no parenthesized argument list.
bool split_call(const std::string& s, std::string& head,
                std::vector<std::string>& args) {
  auto open = s.find('(');
  if (open == std::string::npos) return false;
  if (s.back() != ')')
    throw Error("UnknownInstance", "malformed name '" + s + "'");
  head = s.substr(0, open);
  args.clear();
  int depth = 0;
  std::string cur;
  for (std::size_t i = open + 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  args.push_back(cur);
  return true;
}

int parse_int_arg(const std::string& s, const std::string& context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    throw Error("UnknownInstance",
                "expected a non-negative integer in '" + context + "'");
  return std::atoi(s.c_str());
}

// ---- plain scalar instances ----

Semiring make_real() {
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = "real";
  ops->cancellative = true;
  ops->zero = 0.0;
  ops->one = 1.0;
  ops->add = [](const Value& a, const Value& b) -> Value {
    return std::any_cast<double>(a) + std::any_cast<double>(b);
  };
  ops->mul = [](const Value& a, const Value& b) -> Value {
    return std::any_cast<double>(a) * std::any_cast<double>(b);
  };
  ops->eq = [](const Value& a, const Value& b) {
    return eq_tol(std::any_cast<double>(a), std::any_cast<double>(b));
  };
  ops->is_zero = [](const Value& a) { return std::any_cast<double>(a) == 0.0; };
  ops->accepts = [](const Value& a) { return a.type() == typeid(double); };
  ops->str = [](const Value& a) { return real_str(std::any_cast<double>(a)); };
  ops->parse = [](const std::string& t) -> Value { return parse_double(t); };
  return Semiring(std::move(ops));
}

Semiring make_rational() {
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = "rational";
  ops->cancellative = true;
  ops->zero = mpq_class(0);
  ops->one = mpq_class(1);
  ops->add = [](const Value& a, const Value& b) -> Value {
    return mpq_class(std::any_cast<mpq_class>(a) + std::any_cast<mpq_class>(b));
  };
  ops->mul = [](const Value& a, const Value& b) -> Value {
    return mpq_class(std::any_cast<mpq_class>(a) * std::any_cast<mpq_class>(b));
  };
  ops->eq = [](const Value& a, const Value& b) {
    return std::any_cast<mpq_class>(a) == std::any_cast<mpq_class>(b);
  };
  ops->is_zero = [](const Value& a) { return std::any_cast<mpq_class>(a) == 0; };
  ops->accepts = [](const Value& a) { return a.type() == typeid(mpq_class); };
  ops->str = [](const Value& a) { return std::any_cast<mpq_class>(a).get_str(); };
  ops->parse = [](const std::string& text) -> Value {
    std::string t = strip_ws(text);
    if (t.empty()) throw ParseError("entry", "empty rational");
    // p/q, integers, and plain decimals (exactly converted).
    auto dot = t.find('.');
    if (dot != std::string::npos) {
      std::string digits = t.substr(0, dot) + t.substr(dot + 1);
      std::size_t frac_len = t.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+")
        throw ParseError("entry", "'" + text + "' is not a rational");
      try {
        mpz_class num(digits, 10);  // explicit base: no octal from leading 0s
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        mpq_class q(num, den);
        q.canonicalize();
        return q;
      } catch (const std::invalid_argument&) {
        throw ParseError("entry", "'" + text + "' is not a rational");
      }
    }
    try {
      mpq_class q(t, 10);
      if (q.get_den() == 0) throw ParseError("entry", "zero denominator");
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw ParseError("entry", "'" + text + "' is not a rational");
    }
  };
  return Semiring(std::move(ops));
}

double logsumexp(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

Semiring make_logreal() {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = "logreal";
  // The carrier is the non-negative reals stored in the log domain, where
  // addition is cancellative.
  ops->cancellative = true;
  ops->zero = kNegInf;
  ops->one = 0.0;
  ops->add = [](const Value& a, const Value& b) -> Value {
    return logsumexp(std::any_cast<double>(a), std::any_cast<double>(b));
  };
  ops->mul = [](const Value& a, const Value& b) -> Value {
    double x = std::any_cast<double>(a), y = std::any_cast<double>(b);
    // Keep zero absorbing even against +inf garbage.
    if ((std::isinf(x) && x < 0) || (std::isinf(y) && y < 0))
      return -std::numeric_limits<double>::infinity();
    return x + y;
  };
  ops->eq = [](const Value& a, const Value& b) {
    return eq_tol(std::any_cast<double>(a), std::any_cast<double>(b));
  };
  ops->is_zero = [](const Value& a) {
    double x = std::any_cast<double>(a);
    return std::isinf(x) && x < 0;
  };
  ops->accepts = [](const Value& a) { return a.type() == typeid(double); };
  ops->str = [](const Value& a) { return real_str(std::any_cast<double>(a)); };
  // Entries are linear-domain numbers; the instance stores their logs.
  ops->parse = [](const std::string& t) -> Value {
    double v = parse_double(t);
    if (v < 0) throw ParseError("entry", "logreal entries must be >= 0");
    return std::log(v);
  };
  return Semiring(std::move(ops));
}

Semiring make_maxplus() {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = "maxplus";
  ops->cancellative = false;  // max is not additively cancellative
  ops->zero = kNegInf;
  ops->one = 0.0;
  ops->add = [](const Value& a, const Value& b) -> Value {
    return std::max(std::any_cast<double>(a), std::any_cast<double>(b));
  };
  ops->mul = [](const Value& a, const Value& b) -> Value {
    double x = std::any_cast<double>(a), y = std::any_cast<double>(b);
    if ((std::isinf(x) && x < 0) || (std::isinf(y) && y < 0))
      return -std::numeric_limits<double>::infinity();
    return x + y;
  };
  ops->eq = [](const Value& a, const Value& b) {
    return eq_tol(std::any_cast<double>(a), std::any_cast<double>(b));
  };
  ops->is_zero = [](const Value& a) {
    double x = std::any_cast<double>(a);
    return std::isinf(x) && x < 0;
  };
  ops->accepts = [](const Value& a) { return a.type() == typeid(double); };
  ops->str = [](const Value& a) { return real_str(std::any_cast<double>(a)); };
  ops->parse = [](const std::string& t) -> Value { return parse_double(t); };
  return Semiring(std::move(ops));
}

Semiring make_complex2() {
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = "complex2";
  ops->cancellative = true;
  ops->zero = Cplx(0.0, 0.0);
  ops->one = Cplx(1.0, 0.0);
  ops->add = [](const Value& a, const Value& b) -> Value {
    return std::any_cast<Cplx>(a) + std::any_cast<Cplx>(b);
  };
  ops->mul = [](const Value& a, const Value& b) -> Value {
    return std::any_cast<Cplx>(a) * std::any_cast<Cplx>(b);
  };
  ops->eq = [](const Value& a, const Value& b) {
    Cplx x = std::any_cast<Cplx>(a), y = std::any_cast<Cplx>(b);
    return eq_tol(x.real(), y.real()) && eq_tol(x.imag(), y.imag());
  };
  ops->is_zero = [](const Value& a) {
    Cplx x = std::any_cast<Cplx>(a);
    return x.real() == 0.0 && x.imag() == 0.0;
  };
  ops->accepts = [](const Value& a) { return a.type() == typeid(Cplx); };
  ops->str = [](const Value& a) {
    Cplx x = std::any_cast<Cplx>(a);
    return real_str(x.real()) + "," + real_str(x.imag());
  };
  ops->parse = [](const std::string& t) -> Value {
    auto comma = t.find(',');
    if (comma == std::string::npos)
      throw ParseError("entry", "complex2 entries look like \"a,b\"");
    return Cplx(parse_double(t.substr(0, comma)),
                parse_double(t.substr(comma + 1)));
  };
  return Semiring(std::move(ops));
}

Semiring make_natpoly(int n_vars) {
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = "natpoly(" + std::to_string(n_vars) + ")";
  ops->cancellative = true;
  ops->zero = natpoly_zero(n_vars);
  ops->one = natpoly_one(n_vars);
  ops->add = [](const Value& a, const Value& b) -> Value {
    return natpoly_add(std::any_cast<const NatPoly&>(a),
                       std::any_cast<const NatPoly&>(b));
  };
  ops->mul = [](const Value& a, const Value& b) -> Value {
    return natpoly_mul(std::any_cast<const NatPoly&>(a),
                       std::any_cast<const NatPoly&>(b));
  };
  ops->eq = [](const Value& a, const Value& b) {
    return std::any_cast<const NatPoly&>(a) == std::any_cast<const NatPoly&>(b);
  };
  ops->is_zero = [](const Value& a) {
    return std::any_cast<const NatPoly&>(a).terms.empty();
  };
  ops->accepts = [n_vars](const Value& a) {
    return a.type() == typeid(NatPoly) &&
           std::any_cast<const NatPoly&>(a).n_vars == n_vars;
  };
  ops->str = [](const Value& a) {
    return natpoly_str(std::any_cast<const NatPoly&>(a));
  };
  ops->parse = nullptr;  // polynomials are built programmatically
  return Semiring(std::move(ops));
}

Semiring make_bc(const Semiring& base, int order) {
  if (order < 0 || order > 64)
    throw Error("OrderMismatch", "bc orders are limited to 0..64");
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = "bc(" + base.name() + "," + std::to_string(order) + ")";
  ops->cancellative = base.cancellative();
  ops->zero = bc_zero(base, order);
  ops->one = bc_one(base, order);
  ops->add = [base](const Value& a, const Value& b) -> Value {
    return bc_add(base, std::any_cast<const BCValue&>(a),
                  std::any_cast<const BCValue&>(b));
  };
  ops->mul = [base](const Value& a, const Value& b) -> Value {
    return bc_mul(base, std::any_cast<const BCValue&>(a),
                  std::any_cast<const BCValue&>(b));
  };
  ops->eq = [base, order](const Value& a, const Value& b) {
    const auto& x = std::any_cast<const BCValue&>(a);
    const auto& y = std::any_cast<const BCValue&>(b);
    if (x.comps.size() != y.comps.size()) return false;
    for (std::size_t i = 0; i < x.comps.size(); ++i)
      if (!base.eq(x.comps[i], y.comps[i])) return false;
    return true;
  };
  ops->is_zero = [base](const Value& a) {
    const auto& x = std::any_cast<const BCValue&>(a);
    for (const auto& c : x.comps)
      if (!base.is_zero(c)) return false;
    return true;
  };
  ops->accepts = [base, order](const Value& a) {
    if (a.type() != typeid(BCValue)) return false;
    const auto& x = std::any_cast<const BCValue&>(a);
    if (static_cast<int>(x.comps.size()) != order + 1) return false;
    for (const auto& c : x.comps)
      if (!base.accepts(c)) return false;
    return true;
  };
  ops->str = [base](const Value& a) {
    const auto& x = std::any_cast<const BCValue&>(a);
    std::string out = "(";
    for (std::size_t i = 0; i < x.comps.size(); ++i) {
      if (i) out += ";";
      out += base.str(x.comps[i]);
    }
    return out + ")";
  };
  if (base.can_parse()) {
    ops->parse = [base, order](const std::string& t) -> Value {
      std::string s = t;
      if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("entry", "bc entries look like \"(c0;...;cn)\"");
      s = s.substr(1, s.size() - 2);
      BCValue v;
      std::string cur;
      int depth = 0;  // components may carry nested parens (bc over bc)
      for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ';' && depth == 0) {
          v.comps.push_back(base.parse(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      v.comps.push_back(base.parse(cur));
      if (static_cast<int>(v.comps.size()) != order + 1)
        throw ParseError("entry", "expected " + std::to_string(order + 1) +
                                      " components, got " +
                                      std::to_string(v.comps.size()));
      return v;
    };
  }
  return Semiring(std::move(ops));
}

// ---- the name grammar ----

// bcN sugar: "bc3" -> order 3.
bool is_bc_sugar(const std::string& s, int& order) {
  if (s.size() < 3 || s.compare(0, 2, "bc") != 0) return false;
  std::string digits = s.substr(2);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    return false;
  order = std::atoi(digits.c_str());
  return true;
}

// Canonical form of an instance name; scalar_ctx resolves bcN inside a
// tensor list ("" at top level means the sugar expands over real).
std::string canonical_name(const std::string& raw, const std::string& scalar_ctx) {
  std::string s = strip_ws(raw);
  std::string head;
  std::vector<std::string> args;
  int order = 0;
  if (is_bc_sugar(s, order)) {
    std::string base = scalar_ctx.empty() ? "real" : scalar_ctx;
    return "bc(" + base + "," + std::to_string(order) + ")";
  }
  if (!split_call(s, head, args)) {
    if (s == "real" || s == "rational" || s == "logreal" || s == "maxplus" ||
        s == "complex2")
      return s;
    throw Error("UnknownInstance", "no semiring named '" + s + "'");
  }
  if (head == "natpoly") {
    if (args.size() != 1)
      throw Error("UnknownInstance", "natpoly takes one argument");
    return "natpoly(" + std::to_string(parse_int_arg(args[0], s)) + ")";
  }
  if (head == "bc") {
    if (args.size() != 2)
      throw Error("UnknownInstance", "bc takes (base, order)");
    return "bc(" + canonical_name(args[0], scalar_ctx) + "," +
           std::to_string(parse_int_arg(args[1], s)) + ")";
  }
  if (head == "tensor") {
    if (args.empty())
      throw Error("UnknownInstance", "tensor needs at least one factor");
    // The scalar is fixed by the first factor.
    std::string first = strip_ws(args[0]);
    std::string scalar;
    std::string fh;
    std::vector<std::string> fa;
    int n = 0;
    if (is_bc_sugar(first, n)) {
      scalar = scalar_ctx.empty() ? "real" : scalar_ctx;
    } else if (split_call(first, fh, fa) && fh == "bc") {
      scalar = canonical_name(fa[0], scalar_ctx);
    } else {
      scalar = canonical_name(first, scalar_ctx);
    }
    std::string out = "tensor(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += canonical_name(args[i], scalar);
    }
    return out + ")";
  }
  throw Error("UnknownInstance", "no semiring named '" + s + "'");
}

template <typename T>
class Registry {
 public:
  // Builds outside the lock: construction recurses into the registries
  // (tensor factors look up their scalar). On a race the first insert wins
  // so handle identity stays stable.
  template <typename F>
  T get(const std::string& key, F&& make) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    T value = make();
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.emplace(key, std::move(value)).first;
    return it->second;
  }

 private:
  std::mutex mu_;
  std::map<std::string, T> map_;
};

Registry<Semiring>& semiring_registry() {
  static Registry<Semiring> r;
  return r;
}

Registry<Semialgebra>& semialgebra_registry() {
  static Registry<Semialgebra> r;
  return r;
}

// Builds from a canonical name (assumes canonical form).
Semiring make_semiring_canonical(const std::string& s) {
  std::string head;
  std::vector<std::string> args;
  if (!split_call(s, head, args)) {
    if (s == "real") return make_real();
    if (s == "rational") return make_rational();
    if (s == "logreal") return make_logreal();
    if (s == "maxplus") return make_maxplus();
    if (s == "complex2") return make_complex2();
    throw Error("UnknownInstance", "no semiring named '" + s + "'");
  }
  if (head == "natpoly") return make_natpoly(parse_int_arg(args[0], s));
  if (head == "bc")
    return make_bc(semiring_instance(args[0]), parse_int_arg(args[1], s));
  if (head == "tensor") return semialgebra_instance(s).semiring_view();
  throw Error("UnknownInstance", "no semiring named '" + s + "'");
}

Semialgebra make_semialgebra_canonical(const std::string& s) {
  std::string head;
  std::vector<std::string> args;
  if (!split_call(s, head, args) || head == "natpoly")
    return semialgebra_from_semiring(semiring_instance(s));
  if (head == "bc")
    return bc_semialgebra(semiring_instance(args[0]), parse_int_arg(args[1], s));
  if (head == "tensor") {
    Semialgebra acc = semialgebra_instance(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i)
      acc = tensor_product(acc, semialgebra_instance(args[i]));
    return acc;
  }
  throw Error("UnknownInstance", "no semialgebra named '" + s + "'");
}

}  // namespace

Semiring bc_semiring(const Semiring& base, int order) {
  return make_bc(base, order);
}

Semiring semiring_instance(const std::string& name) {
  std::string key = canonical_name(name, "");
  return semiring_registry().get(key,
                                 [&] { return make_semiring_canonical(key); });
}

Semialgebra semialgebra_instance(const std::string& name) {
  std::string key = canonical_name(name, "");
  return semialgebra_registry().get(
      key, [&] { return make_semialgebra_canonical(key); });
}

}  // namespace semigraph
