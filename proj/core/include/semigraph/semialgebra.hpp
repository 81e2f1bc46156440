#pragma once

// Semialgebras over a cancellative scalar semiring: finite bases, sparse
// structure constants, tensor products, and extension by linearity. A
// product of factor algebras is kept as one flat factor list with
// tuple-indexed bases, so repeated tensoring never needs re-bracketing.
// The composer at the bottom assembles the full multilinear-objective
// pipeline: product source maps, a product homomorphism, the tensor
// algebra to run forward over, and the final linear extraction.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semigraph/hom.hpp"
#include "semigraph/semiring.hpp"

namespace semigraph {

class Semialgebra;

// Element of a (tensor-product) semialgebra: sparse scalar coefficients
// keyed by flat basis index. Flat indexing is mixed-radix over the factor
// bases with the leftmost factor most significant, so ascending flat index
// is basis-tuple lexicographic order.
struct TensorValue {
  std::shared_ptr<const struct SemialgebraImpl> spec;
  std::map<int, Value> coeffs;  // canonical: no zero coefficients stored
};

struct SemialgebraImpl {
  Semiring scalar;
  // One entry per tensor factor; dims multiply to the total dimension.
  struct Factor {
    std::string name;
    int dim;
  };
  std::vector<Factor> factors;
  int dim;
  std::vector<std::string> basis_names;  // by flat index
  // Sparse structure constants: sc[u * dim + v] lists the non-zero
  // sigma^w_{u,v}. Unit constants are flagged so multiplication can skip
  // the scalar product (keeps measured op counts at the textbook cost).
  struct ScEntry {
    int w;
    Value sigma;
    bool sigma_is_one;
  };
  std::vector<std::vector<ScEntry>> sc;
  std::map<int, Value> unit;  // coefficients of 1_A
  std::string name;
  // Algebra of all factors but the last (the scalar as a one-dimensional
  // algebra when only one factor exists); what projections land in. Null
  // when the last factor does not support projection.
  std::shared_ptr<const SemialgebraImpl> prefix;
};

class Semialgebra {
 public:
  explicit Semialgebra(std::shared_ptr<const SemialgebraImpl> impl)
      : impl_(std::move(impl)) {}

  const Semiring& scalar() const { return impl_->scalar; }
  int dim() const { return impl_->dim; }
  int n_factors() const { return static_cast<int>(impl_->factors.size()); }
  const SemialgebraImpl::Factor& factor(int i) const { return impl_->factors[i]; }
  const std::string& name() const { return impl_->name; }
  const std::string& basis_name(int u) const { return impl_->basis_names[u]; }
  const std::shared_ptr<const SemialgebraImpl>& impl() const { return impl_; }

  // sigma^w_{u,v} entries with non-zero scalar.
  const std::vector<SemialgebraImpl::ScEntry>& structure_constants(int u, int v) const {
    return impl_->sc[u * impl_->dim + v];
  }

  TensorValue zero() const { return {impl_, {}}; }
  TensorValue one() const { return {impl_, impl_->unit}; }
  // sigma * u for a basis index u.
  TensorValue basis(int u, const Value& coeff) const;
  TensorValue basis(int u) const;

  // Wraps the algebra as a semiring over TensorValue carriers so the
  // generic forward machinery can drive it directly.
  Semiring semiring_view() const;

  bool same_spec(const Semialgebra& o) const { return impl_ == o.impl_; }
  bool has_prefix() const { return impl_->prefix != nullptr; }
  Semialgebra prefix() const;  // asserts has_prefix()

 private:
  std::shared_ptr<const SemialgebraImpl> impl_;
};

// One-dimensional algebra with basis {1} over s. Throws
// Error("NotCancellative") unless s is cancellative.
Semialgebra semialgebra_from_semiring(const Semiring& s);

// Looks up an algebra by name: a cancellative scalar semiring name (its
// one-dimensional algebra), bc(BASE,N) / bcN, or tensor(F1,...,Fk) where
// the first factor fixes the scalar. Cached, so repeated lookups share one
// spec and their values interoperate. Throws Error("UnknownInstance").
Semialgebra semialgebra_instance(const std::string& name);

// Basis {e_0..e_n} with e_i * e_j = C(i+j, i) e_{i+j} when i+j <= n, else 0.
// Multiplication of coefficient vectors reproduces the binomial
// convolution. Throws Error("NotCancellative").
Semialgebra bc_semialgebra(const Semiring& base, int n);

// Basis U x V with factor-wise structure-constant products. Throws
// Error("ScalarMismatch") when the scalars differ and
// Error("NotCancellative") when the shared scalar is not cancellative.
Semialgebra tensor_product(const Semialgebra& a, const Semialgebra& b);

// a (x) bc1 over a's scalar: the algebra first-order pipelines run in.
// Projections of its values land back in a.
Semialgebra bc1_extension(const Semialgebra& a);

// Throw Error("SpecMismatch") when the operands live in different algebras.
TensorValue tensor_add(const TensorValue& t1, const TensorValue& t2);
TensorValue tensor_mul(const TensorValue& t1, const TensorValue& t2);
TensorValue tensor_scale(const Value& s, const TensorValue& t);
bool tensor_eq(const TensorValue& t1, const TensorValue& t2);
std::string tensor_str(const TensorValue& t);
// Coefficients as a dense array in flat-index (basis-tuple lexicographic)
// order.
std::vector<Value> tensor_dense(const TensorValue& t);
TensorValue tensor_from_dense(const Semialgebra& a, const std::vector<Value>& coeffs);
// The single coefficient of a one-dimensional algebra value; throws
// Error("ShapeMismatch") for higher dimensions.
Value tensor_scalar(const TensorValue& t);

// Target semimodule for extension by linearity, described by callbacks.
// When the target is (the carrier of) a semiring, `semiring` names it so
// composition code can check compatibility.
struct LinearTarget {
  std::function<Value()> zero;
  std::function<Value(const Value&, const Value&)> add;
  // Scalar action s . t.
  std::function<Value(const Value&, const Value&)> scale;
  std::optional<Semiring> semiring;
};

LinearTarget linear_target_from_semiring(const Semiring& s);

struct LinearMap {
  Semialgebra source;
  LinearTarget target;
  std::map<int, Value> images;  // full basis of `source`, by flat index

  Value operator()(const TensorValue& t) const;
};

// Throws Error("IncompleteImages") unless every basis index of `source`
// has an image.
LinearMap extend_by_linearity(const Semialgebra& source,
                              const std::map<int, Value>& images,
                              const LinearTarget& target);

// One factor of a multilinear objective: run sources through hom(phi), drive
// the forward pass in algebra, and extract with the given linear map. The
// hom's target must be (a semiring view of) the algebra.
struct FrameworkPart {
  Semialgebra algebra;
  MonoidHom hom;
  std::map<int, double> phi;  // keyed by source node id
  LinearMap extractor;
};

struct ComposedFramework {
  Semialgebra tensor;  // A_1 (x) ... (x) A_m
  // Product homomorphism applied to one source's parameter tuple.
  std::function<TensorValue(const std::vector<double>&)> product_hom;
  // Parameter tuples (phi_1(v), ..., phi_m(v)) keyed by source node id.
  std::map<int, std::vector<double>> product_phi;
  // Extension by linearity of u_1 (x) ... (x) u_m -> L_1(u_1) ... L_m(u_m).
  LinearMap extractor;

  // product_hom applied through product_phi; the source values to run
  // forward with.
  std::map<int, Value> xi() const;
};

// Throws Error("ScalarMismatch") if the parts disagree on the scalar
// semiring or an extractor does not land in it, and
// Error("SourceSetMismatch") if the phi maps are not over one source set.
ComposedFramework compose_framework(const std::vector<FrameworkPart>& parts);

}  // namespace semigraph
