#include "semigraph/semialgebra.hpp"

#include <algorithm>
#include <cassert>

#include "semigraph/bc.hpp"
#include "semigraph/errors.hpp"

namespace semigraph {

namespace {

void check_spec(const TensorValue& a, const TensorValue& b) {
  if (a.spec != b.spec)
    throw Error("SpecMismatch", "operands live in different semialgebras");
}

void insert_term(std::map<int, Value>& coeffs, const Semiring& scalar, int w,
                 const Value& v) {
  auto it = coeffs.find(w);
  if (it == coeffs.end()) {
    if (!scalar.is_zero(v)) coeffs.emplace(w, v);
    return;
  }
  Value sum = scalar.add(it->second, v);
  if (scalar.is_zero(sum))
    coeffs.erase(it);
  else
    it->second = std::move(sum);
}

}  // namespace

TensorValue Semialgebra::basis(int u, const Value& coeff) const {
  assert(u >= 0 && u < impl_->dim);
  TensorValue t{impl_, {}};
  if (!impl_->scalar.is_zero(coeff)) t.coeffs.emplace(u, coeff);
  return t;
}

TensorValue Semialgebra::basis(int u) const { return basis(u, impl_->scalar.one()); }

Semialgebra Semialgebra::prefix() const {
  assert(impl_->prefix);
  return Semialgebra(impl_->prefix);
}

TensorValue tensor_add(const TensorValue& t1, const TensorValue& t2) {
  check_spec(t1, t2);
  const Semiring& scalar = t1.spec->scalar;
  TensorValue r = t1;
  for (const auto& [w, v] : t2.coeffs) insert_term(r.coeffs, scalar, w, v);
  return r;
}

TensorValue tensor_mul(const TensorValue& t1, const TensorValue& t2) {
  check_spec(t1, t2);
  const SemialgebraImpl& impl = *t1.spec;
  const Semiring& scalar = impl.scalar;
  TensorValue r{t1.spec, {}};
  for (const auto& [u, cu] : t1.coeffs) {
    for (const auto& [v, cv] : t2.coeffs) {
      const auto& entries = impl.sc[u * impl.dim + v];
      if (entries.empty()) continue;
      Value cuv = scalar.mul(cu, cv);
      for (const auto& e : entries)
        insert_term(r.coeffs, scalar, e.w,
                    e.sigma_is_one ? cuv : scalar.mul(cuv, e.sigma));
    }
  }
  return r;
}

TensorValue tensor_scale(const Value& s, const TensorValue& t) {
  const Semiring& scalar = t.spec->scalar;
  TensorValue r{t.spec, {}};
  for (const auto& [w, v] : t.coeffs) {
    Value sv = scalar.mul(s, v);
    if (!scalar.is_zero(sv)) r.coeffs.emplace(w, std::move(sv));
  }
  return r;
}

bool tensor_eq(const TensorValue& t1, const TensorValue& t2) {
  if (t1.spec != t2.spec) return false;
  const Semiring& scalar = t1.spec->scalar;
  auto it1 = t1.coeffs.begin();
  auto it2 = t2.coeffs.begin();
  // Walk both sparse maps; a missing coefficient is the scalar zero.
  while (it1 != t1.coeffs.end() || it2 != t2.coeffs.end()) {
    if (it2 == t2.coeffs.end() || (it1 != t1.coeffs.end() && it1->first < it2->first)) {
      if (!scalar.eq(it1->second, scalar.zero())) return false;
      ++it1;
    } else if (it1 == t1.coeffs.end() || it2->first < it1->first) {
      if (!scalar.eq(it2->second, scalar.zero())) return false;
      ++it2;
    } else {
      if (!scalar.eq(it1->second, it2->second)) return false;
      ++it1;
      ++it2;
    }
  }
  return true;
}

std::vector<Value> tensor_dense(const TensorValue& t) {
  std::vector<Value> out(t.spec->dim, t.spec->scalar.zero());
  for (const auto& [w, v] : t.coeffs) out[w] = v;
  return out;
}

TensorValue tensor_from_dense(const Semialgebra& a, const std::vector<Value>& coeffs) {
  if (static_cast<int>(coeffs.size()) != a.dim())
    throw Error("ShapeMismatch", "expected " + std::to_string(a.dim()) +
                                     " coefficients, got " +
                                     std::to_string(coeffs.size()));
  TensorValue t{a.impl(), {}};
  for (int w = 0; w < a.dim(); ++w)
    if (!a.scalar().is_zero(coeffs[w])) t.coeffs.emplace(w, coeffs[w]);
  return t;
}

Value tensor_scalar(const TensorValue& t) {
  if (t.spec->dim != 1)
    throw Error("ShapeMismatch", "value is not one-dimensional");
  auto it = t.coeffs.find(0);
  return it == t.coeffs.end() ? t.spec->scalar.zero() : it->second;
}

std::string tensor_str(const TensorValue& t) {
  const Semiring& scalar = t.spec->scalar;
  std::string out = "[";
  for (int w = 0; w < t.spec->dim; ++w) {
    if (w) out += ";";
    auto it = t.coeffs.find(w);
    out += scalar.str(it == t.coeffs.end() ? scalar.zero() : it->second);
  }
  return out + "]";
}

Semiring Semialgebra::semiring_view() const {
  auto impl = impl_;
  const Semiring& scalar = impl->scalar;
  auto ops = std::make_shared<Semiring::Ops>();
  ops->name = impl->name;
  ops->cancellative = scalar.cancellative();
  ops->zero = TensorValue{impl, {}};
  ops->one = TensorValue{impl, impl->unit};
  ops->add = [](const Value& a, const Value& b) -> Value {
    return tensor_add(std::any_cast<const TensorValue&>(a),
                      std::any_cast<const TensorValue&>(b));
  };
  ops->mul = [](const Value& a, const Value& b) -> Value {
    return tensor_mul(std::any_cast<const TensorValue&>(a),
                      std::any_cast<const TensorValue&>(b));
  };
  ops->eq = [](const Value& a, const Value& b) {
    return tensor_eq(std::any_cast<const TensorValue&>(a),
                     std::any_cast<const TensorValue&>(b));
  };
  ops->is_zero = [scalar](const Value& a) {
    for (const auto& [w, v] : std::any_cast<const TensorValue&>(a).coeffs) {
      (void)w;
      if (!scalar.is_zero(v)) return false;
    }
    return true;
  };
  ops->accepts = [impl](const Value& a) {
    return a.type() == typeid(TensorValue) &&
           std::any_cast<const TensorValue&>(a).spec == impl;
  };
  ops->str = [](const Value& a) {
    return tensor_str(std::any_cast<const TensorValue&>(a));
  };
  if (scalar.can_parse()) {
    Semialgebra self(impl);
    ops->parse = [self, scalar](const std::string& t) -> Value {
      if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError("entry", "tensor entries look like \"[c0;...;ck]\"");
      std::vector<Value> comps;
      std::string cur;
      for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        if (t[i] == ';') {
          comps.push_back(scalar.parse(cur));
          cur.clear();
        } else {
          cur += t[i];
        }
      }
      comps.push_back(scalar.parse(cur));
      return tensor_from_dense(self, comps);
    };
  }
  return Semiring(std::move(ops));
}

namespace {

std::shared_ptr<SemialgebraImpl> new_impl(const Semiring& scalar) {
  if (!scalar.cancellative())
    throw Error("NotCancellative",
                "semialgebras require a cancellative scalar semiring, got '" +
                    scalar.name() + "'");
  auto impl = std::make_shared<SemialgebraImpl>(SemialgebraImpl{
      scalar, {}, 0, {}, {}, {}, "", nullptr});
  return impl;
}

}  // namespace

Semialgebra semialgebra_from_semiring(const Semiring& s) {
  auto impl = new_impl(s);
  impl->factors = {{s.name(), 1}};
  impl->dim = 1;
  impl->basis_names = {"1"};
  impl->sc.resize(1);
  impl->sc[0] = {{0, s.one(), true}};
  impl->unit = {{0, s.one()}};
  impl->name = s.name();
  return Semialgebra(std::move(impl));
}

Semialgebra bc_semialgebra(const Semiring& base, int n) {
  if (n < 0 || n > 64)
    throw Error("OrderMismatch", "bc orders are limited to 0..64");
  auto impl = new_impl(base);
  const int dim = n + 1;
  impl->factors = {{"bc(" + base.name() + "," + std::to_string(n) + ")", dim}};
  impl->dim = dim;
  for (int i = 0; i <= n; ++i)
    impl->basis_names.push_back("e" + std::to_string(i));
  impl->sc.resize(dim * dim);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i + j <= n) {
        const mpz_class& b = binomial(i + j, i);
        Value c = base.repeat(b, base.one());
        impl->sc[i * dim + j] = {{i + j, std::move(c), b == 1}};
      }
    }
  }
  impl->unit = {{0, base.one()}};
  impl->name = impl->factors[0].name;
  if (n == 1) impl->prefix = semialgebra_from_semiring(base).impl();
  return Semialgebra(std::move(impl));
}

namespace {

bool is_bc1_factor(const SemialgebraImpl::Factor& f) {
  return f.dim == 2 && f.name.rfind("bc(", 0) == 0;
}

std::string joined_name(const std::vector<SemialgebraImpl::Factor>& factors) {
  if (factors.size() == 1) return factors[0].name;
  std::string out = "tensor(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ",";
    out += factors[i].name;
  }
  return out + ")";
}

}  // namespace

Semialgebra tensor_product(const Semialgebra& a, const Semialgebra& b) {
  if (!a.scalar().same_instance(b.scalar()))
    throw Error("ScalarMismatch", "factors have scalars '" + a.scalar().name() +
                                      "' and '" + b.scalar().name() + "'");
  const Semiring& scalar = a.scalar();
  auto impl = new_impl(scalar);

  const SemialgebraImpl& ia = *a.impl();
  const SemialgebraImpl& ib = *b.impl();
  impl->factors = ia.factors;
  impl->factors.insert(impl->factors.end(), ib.factors.begin(), ib.factors.end());
  impl->dim = ia.dim * ib.dim;
  impl->basis_names.reserve(impl->dim);
  for (int ua = 0; ua < ia.dim; ++ua)
    for (int ub = 0; ub < ib.dim; ++ub)
      impl->basis_names.push_back(ia.basis_names[ua] + "*" + ib.basis_names[ub]);

  // omega^{(wa,wb)}_{(ua,ub),(va,vb)} = sigma^{wa}_{ua,va} * tau^{wb}_{ub,vb}
  impl->sc.resize(std::size_t(impl->dim) * impl->dim);
  for (int ua = 0; ua < ia.dim; ++ua) {
    for (int ub = 0; ub < ib.dim; ++ub) {
      for (int va = 0; va < ia.dim; ++va) {
        for (int vb = 0; vb < ib.dim; ++vb) {
          auto& out = impl->sc[std::size_t(ua * ib.dim + ub) * impl->dim +
                               (va * ib.dim + vb)];
          for (const auto& e1 : ia.sc[ua * ia.dim + va]) {
            for (const auto& e2 : ib.sc[ub * ib.dim + vb]) {
              const bool is_one = e1.sigma_is_one && e2.sigma_is_one;
              Value prod = is_one ? scalar.one() : scalar.mul(e1.sigma, e2.sigma);
              if (!scalar.is_zero(prod))
                out.push_back({e1.w * ib.dim + e2.w, std::move(prod), is_one});
            }
          }
        }
      }
    }
  }

  for (const auto& [ua, s1] : ia.unit)
    for (const auto& [ub, s2] : ib.unit) {
      Value prod = scalar.mul(s1, s2);
      if (!scalar.is_zero(prod)) impl->unit.emplace(ua * ib.dim + ub, std::move(prod));
    }

  impl->name = joined_name(impl->factors);
  if (is_bc1_factor(impl->factors.back())) {
    if (ib.factors.size() == 1) {
      impl->prefix = a.impl();
    } else if (ib.prefix) {
      impl->prefix = tensor_product(a, Semialgebra(ib.prefix)).impl();
    }
  }
  return Semialgebra(std::move(impl));
}

Semialgebra bc1_extension(const Semialgebra& a) {
  return tensor_product(a, bc_semialgebra(a.scalar(), 1));
}

LinearTarget linear_target_from_semiring(const Semiring& s) {
  LinearTarget t;
  t.zero = [s]() -> Value { return s.zero(); };
  t.add = [s](const Value& a, const Value& b) -> Value { return s.add(a, b); };
  t.scale = [s](const Value& c, const Value& v) -> Value { return s.mul(c, v); };
  t.semiring = s;
  return t;
}

Value LinearMap::operator()(const TensorValue& t) const {
  if (t.spec != source.impl())
    throw Error("SpecMismatch", "argument is not an element of the map's source");
  Value acc = target.zero();
  for (const auto& [w, c] : t.coeffs)
    acc = target.add(acc, target.scale(c, images.at(w)));
  return acc;
}

LinearMap extend_by_linearity(const Semialgebra& source,
                              const std::map<int, Value>& images,
                              const LinearTarget& target) {
  for (int w = 0; w < source.dim(); ++w)
    if (images.find(w) == images.end())
      throw Error("IncompleteImages",
                  "no image for basis element " + source.basis_name(w));
  return LinearMap{source, target, images};
}

namespace {

// Lifts a homomorphism output into its part's algebra: scalars land in
// one-dimensional algebras, binomial-convolution tuples in bc factors, and
// TensorValues pass through unchanged.
TensorValue to_algebra_value(const Semialgebra& a, const Value& v) {
  const Semiring& scalar = a.scalar();
  if (v.type() == typeid(TensorValue)) {
    const auto& t = std::any_cast<const TensorValue&>(v);
    if (t.spec != a.impl())
      throw Error("SpecMismatch", "tensor value from a different algebra");
    return t;
  }
  if (v.type() == typeid(BCValue)) {
    const auto& bc = std::any_cast<const BCValue&>(v);
    if (static_cast<int>(bc.comps.size()) != a.dim())
      throw Error("SpecMismatch",
                  "bc tuple of order " + std::to_string(bc.comps.size() - 1) +
                      " for an algebra of dimension " + std::to_string(a.dim()));
    TensorValue t{a.impl(), {}};
    for (int i = 0; i < a.dim(); ++i)
      if (!scalar.is_zero(bc.comps[i])) t.coeffs.emplace(i, bc.comps[i]);
    return t;
  }
  if (a.dim() == 1 && scalar.accepts(v)) {
    TensorValue t{a.impl(), {}};
    if (!scalar.is_zero(v)) t.coeffs.emplace(0, v);
    return t;
  }
  throw Error("SpecMismatch", "cannot interpret the value in algebra '" +
                                  a.name() + "'");
}

}  // namespace

std::map<int, Value> ComposedFramework::xi() const {
  std::map<int, Value> out;
  for (const auto& [v, params] : product_phi) out.emplace(v, product_hom(params));
  return out;
}

ComposedFramework compose_framework(const std::vector<FrameworkPart>& parts) {
  if (parts.empty())
    throw Error("SourceSetMismatch", "need at least one part");
  const Semiring scalar = parts[0].algebra.scalar();
  for (const auto& p : parts) {
    if (!p.algebra.scalar().same_instance(scalar))
      throw Error("ScalarMismatch", "parts disagree on the scalar semiring");
    if (!p.extractor.target.semiring ||
        !p.extractor.target.semiring->same_instance(scalar))
      throw Error("ScalarMismatch",
                  "extractors must land in the shared scalar semiring");
    if (!p.extractor.source.same_spec(p.algebra))
      throw Error("SpecMismatch", "extractor source is not the part's algebra");
  }
  for (const auto& p : parts) {
    if (p.phi.size() != parts[0].phi.size())
      throw Error("SourceSetMismatch", "phi maps cover different source sets");
    for (const auto& [v, x] : p.phi) {
      (void)x;
      if (parts[0].phi.find(v) == parts[0].phi.end())
        throw Error("SourceSetMismatch", "phi maps cover different source sets");
    }
  }

  ComposedFramework out{parts[0].algebra, nullptr, {}, LinearMap{parts[0].algebra, {}, {}}};
  for (std::size_t j = 1; j < parts.size(); ++j)
    out.tensor = tensor_product(out.tensor, parts[j].algebra);

  std::vector<MonoidHom> homs;
  std::vector<Semialgebra> algebras;
  for (const auto& p : parts) {
    homs.push_back(p.hom);
    algebras.push_back(p.algebra);
  }
  auto tensor = out.tensor;
  out.product_hom = [homs, algebras, tensor,
                     scalar](const std::vector<double>& params) -> TensorValue {
    if (params.size() != homs.size())
      throw Error("SourceSetMismatch", "parameter tuple of wrong arity");
    // Outer product of the per-part values, folded left to right.
    std::map<int, Value> acc{{0, scalar.one()}};
    for (std::size_t j = 0; j < homs.size(); ++j) {
      TensorValue part = to_algebra_value(algebras[j], homs[j].apply(params[j]));
      std::map<int, Value> next;
      const int dim_j = algebras[j].dim();
      for (const auto& [u, cu] : acc)
        for (const auto& [v, cv] : part.coeffs) {
          Value prod = scalar.mul(cu, cv);
          if (!scalar.is_zero(prod)) next.emplace(u * dim_j + v, std::move(prod));
        }
      acc = std::move(next);
    }
    return TensorValue{tensor.impl(), std::move(acc)};
  };

  for (const auto& [v, x] : parts[0].phi) {
    std::vector<double> tuple;
    tuple.reserve(parts.size());
    for (const auto& p : parts) tuple.push_back(p.phi.at(v));
    out.product_phi.emplace(v, std::move(tuple));
  }

  // L'(u_1 (x) ... (x) u_m) = L_1(u_1) ... L_m(u_m), extended by linearity.
  std::map<int, Value> images;
  for (int w = 0; w < out.tensor.dim(); ++w) {
    int rem = w;
    Value img = scalar.one();
    for (std::size_t j = parts.size(); j-- > 0;) {
      int dim_j = parts[j].algebra.dim();
      int u_j = rem % dim_j;
      rem /= dim_j;
      img = scalar.mul(parts[j].extractor.images.at(u_j), img);
    }
    images.emplace(w, std::move(img));
  }
  out.extractor = extend_by_linearity(out.tensor, images,
                                      linear_target_from_semiring(scalar));
  return out;
}

}  // namespace semigraph
