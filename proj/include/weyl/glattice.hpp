#pragma once

// G = PSL(2,R) x PSL(2,R), the Hilbert modular lattice PSL(2,O) embedded by
// gamma -> (gamma, sigma(gamma)), and height-bounded searches over it.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weyl/kernels.hpp"
#include "weyl/moebius.hpp"
#include "weyl/quadfield.hpp"

namespace weyl {

using HPair = std::array<HPoint, 2>;

inline constexpr HPair kReferencePair{HPoint{0.0, 1.0}, HPoint{0.0, 1.0}};

class GElem {
 public:
  GElem() = default;
  GElem(Mobius first, Mobius second) : first_(first), second_(second) {}

  const Mobius& first() const noexcept { return first_; }
  const Mobius& second() const noexcept { return second_; }
  const Mobius& factor(int i) const { return i == 1 ? first_ : second_; }
  /// Exact matrix over K this element was embedded from, if any.
  const std::optional<QuadMatrix>& provenance() const noexcept { return provenance_; }

  GElem inverse() const;
  /// Keeps exact provenance only when both sides carry it.
  friend GElem operator*(const GElem& x, const GElem& y);

  friend GElem hilbert_embed(const QuadMatrix& m);

 private:
  Mobius first_;
  Mobius second_;
  std::optional<QuadMatrix> provenance_;
};

/// Throws DomainError unless every entry lies in the ring of integers (the
/// determinant is already exact one by construction of QuadMatrix).
GElem hilbert_embed(const QuadMatrix& m);

HPair apply(const GElem& g, const HPair& z);
double product_distance(const HPair& z, const HPair& w);

struct PairKind {
  enum class Tag { Identity, Hyperbolic, Parabolic, Elliptic, Mixed };
  Tag tag = Tag::Identity;
  bool hyper_regular = false;
  /// For Mixed: the factor (1 or 2) whose component is hyperbolic, 0 if none.
  int hyperbolic_factor = 0;
  IsometryKind first = IsometryKind::Identity;
  IsometryKind second = IsometryKind::Identity;
};

const char* to_string(PairKind::Tag t);

/// Component kinds combined. Exact when provenance is present, in which case
/// the trace relation tr(second) = sigma(tr(first)) and the structural
/// constraints of Hilbert lattices are asserted (IntegrityError).
PairKind classify_pair(const GElem& g, double tol = kClassifyTol);

/// Distinct absolute traces. Throws DomainError unless the pair is hyperbolic.
bool is_hyper_regular(const GElem& g, double tol = kClassifyTol);

struct LatticeSpec {
  /// Throws DomainError if height_bound < 1.
  LatticeSpec(QuadField field, std::int64_t height_bound, Exec exec = Exec::Parallel);

  QuadField field;
  std::int64_t height_bound;
  Exec exec;
};

struct LatticeElement {
  IntMatrix coeffs;
  QuadMatrix exact;
  GElem g;
  PairKind kind;
};

/// The enumerated lattice at a height, in canonical order.
class Lattice {
 public:
  explicit Lattice(const LatticeSpec& spec);

  const LatticeSpec& spec() const noexcept { return spec_; }
  const std::vector<LatticeElement>& elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  const LatticeElement& operator[](std::size_t i) const { return elems_[i]; }

 private:
  LatticeSpec spec_;
  std::vector<LatticeElement> elems_;
};

/// Process-wide cache keyed by (d, height).
std::shared_ptr<const Lattice> lattice_for(const LatticeSpec& spec);

QuadMatrix to_quad_matrix(const QuadField& field, const IntMatrix& m);
/// Integral-basis coefficients; throws DomainError for non-integral entries.
IntMatrix to_int_matrix(const QuadMatrix& m);

std::vector<QuadMatrix> enumerate_lattice(const LatticeSpec& spec);

/// Does the given component of g fix xi? Exact when g has provenance and xi is
/// exact in the same field, tolerance 1e-9 otherwise.
bool fixes(const GElem& g, int factor, const BPoint& xi);

std::vector<GElem> fixing_elements(const BPoint& xi, int factor, const LatticeSpec& spec);

struct DiagonalIntersection {
  std::vector<GElem> elements;
  /// 0: none found, 1: all log-eigenvalue vectors collinear, 2: two independent.
  int rank = 0;
};

DiagonalIntersection intersect_conjugated_diagonal(const GElem& g, const LatticeSpec& spec);

/// Smallest n <= cap with m^n = +-Id, or nullopt.
std::optional<int> finite_order(const QuadMatrix& m, int cap = 24);

}  // namespace weyl
