#pragma once

// Hot loops: box enumeration of det-one matrices over the ring of integers and
// deterministic parallel filter / argmin over index ranges. Each kernel has a
// serial form (the reference) and an OpenMP form with identical output.

#include <array>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace weyl {

enum class Exec { Serial, Parallel };

/// u + v * omega with integer coefficients.
struct IntElem {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend bool operator==(const IntElem&, const IntElem&) = default;
};

/// Row-major (a, b, c, d).
struct IntMatrix {
  std::array<IntElem, 4> e;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

/// Ring arithmetic in the integral basis: omega^2 = d, or omega^2 = omega + (d-1)/4
/// for the half-integral basis.
class IntArith {
 public:
  explicit IntArith(std::int64_t d);

  IntElem add(IntElem x, IntElem y) const { return {x.u + y.u, x.v + y.v}; }
  IntElem sub(IntElem x, IntElem y) const { return {x.u - y.u, x.v - y.v}; }
  IntElem mul(IntElem x, IntElem y) const;
  IntElem conj(IntElem x) const;
  /// x * conj(x), a rational integer.
  std::int64_t norm(IntElem x) const;
  /// Exact quotient x / y if it lies in the ring.
  std::optional<IntElem> div_exact(IntElem x, IntElem y) const;
  bool is_unit(IntElem x) const;

  IntElem det(const IntMatrix& m) const;
  IntMatrix mul(const IntMatrix& x, const IntMatrix& y) const;

 private:
  std::int64_t d_;
  bool half_;
  std::int64_t k_;  // (d - 1) / 4 for the half-integral basis
};

/// First nonzero coefficient in (a.u, a.v, b.u, ..., d.v) is positive.
bool is_sign_canonical(const IntMatrix& m);
IntMatrix sign_canonical(const IntMatrix& m);
/// max |coefficient|.
std::int64_t height(const IntMatrix& m);
/// Canonical enumeration order: height, then L1 norm of coefficients, then
/// entrywise keys.
bool canonical_less(const IntMatrix& x, const IntMatrix& y);

/// All det-one matrices with coefficients in [-h, h], one per {M, -M}, in
/// canonical order. Every element has a unit coefficient, so h = 0 yields none.
std::vector<IntMatrix> enumerate_box_reference(std::int64_t d, std::int64_t h);
std::vector<IntMatrix> enumerate_box_serial(std::int64_t d, std::int64_t h);
std::vector<IntMatrix> enumerate_box_parallel(std::int64_t d, std::int64_t h);
std::vector<IntMatrix> enumerate_box(std::int64_t d, std::int64_t h, Exec exec = Exec::Parallel);

/// Indices i in [0, n) with pred(i), in increasing order.
std::vector<std::size_t> filter_indices(std::size_t n, const std::function<bool(std::size_t)>& pred,
                                        Exec exec = Exec::Parallel);

/// Smallest score over [0, n); ties go to the lowest index. Scores that are
/// NaN are skipped. Returns nullopt when n == 0 or every score is NaN.
struct ArgMin {
  std::size_t index = 0;
  double score = std::numeric_limits<double>::infinity();
};
std::optional<ArgMin> argmin(std::size_t n, const std::function<double(std::size_t)>& score,
                             Exec exec = Exec::Parallel);

/// First index with pred(i), or nullopt.
std::optional<std::size_t> find_first(std::size_t n, const std::function<bool(std::size_t)>& pred,
                                      Exec exec = Exec::Parallel);

}  // namespace weyl
