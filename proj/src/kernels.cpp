#include "weyl/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <tuple>

#include "weyl/errors.hpp"

namespace weyl {

IntArith::IntArith(std::int64_t d) : d_(d), half_(d % 4 == 1), k_((d - 1) / 4) {}

IntElem IntArith::mul(IntElem x, IntElem y) const {
  if (half_) {
    return {x.u * y.u + k_ * x.v * y.v, x.u * y.v + x.v * y.u + x.v * y.v};
  }
  return {x.u * y.u + d_ * x.v * y.v, x.u * y.v + x.v * y.u};
}

IntElem IntArith::conj(IntElem x) const {
  if (half_) return {x.u + x.v, -x.v};
  return {x.u, -x.v};
}

std::int64_t IntArith::norm(IntElem x) const { return mul(x, conj(x)).u; }

std::optional<IntElem> IntArith::div_exact(IntElem x, IntElem y) const {
  const std::int64_t n = norm(y);
  if (n == 0) return std::nullopt;
  const IntElem p = mul(x, conj(y));
  if (p.u % n != 0 || p.v % n != 0) return std::nullopt;
  return IntElem{p.u / n, p.v / n};
}

bool IntArith::is_unit(IntElem x) const { return std::llabs(norm(x)) == 1; }

IntElem IntArith::det(const IntMatrix& m) const {
  return sub(mul(m.e[0], m.e[3]), mul(m.e[1], m.e[2]));
}

IntMatrix IntArith::mul(const IntMatrix& x, const IntMatrix& y) const {
  const auto& p = x.e;
  const auto& q = y.e;
  return {{add(mul(p[0], q[0]), mul(p[1], q[2])), add(mul(p[0], q[1]), mul(p[1], q[3])),
           add(mul(p[2], q[0]), mul(p[3], q[2])), add(mul(p[2], q[1]), mul(p[3], q[3]))}};
}

// ---------------------------------------------------------------------------

bool is_sign_canonical(const IntMatrix& m) {
  for (const IntElem& x : m.e) {
    if (x.u != 0) return x.u > 0;
    if (x.v != 0) return x.v > 0;
  }
  return true;
}

IntMatrix sign_canonical(const IntMatrix& m) {
  if (is_sign_canonical(m)) return m;
  IntMatrix r = m;
  for (IntElem& x : r.e) x = {-x.u, -x.v};
  return r;
}

std::int64_t height(const IntMatrix& m) {
  std::int64_t h = 0;
  for (const IntElem& x : m.e) h = std::max<std::int64_t>({h, std::llabs(x.u), std::llabs(x.v)});
  return h;
}

namespace {

std::int64_t zig(std::int64_t x) { return x > 0 ? 2 * x - 1 : -2 * x; }

auto entry_key(const IntElem& x) {
  return std::make_tuple(std::llabs(x.u) + std::llabs(x.v), std::llabs(x.v), zig(x.u), zig(x.v));
}

std::int64_t l1(const IntMatrix& m) {
  std::int64_t s = 0;
  for (const IntElem& x : m.e) s += std::llabs(x.u) + std::llabs(x.v);
  return s;
}

std::vector<IntElem> box(std::int64_t h) {
  std::vector<IntElem> out;
  for (std::int64_t u = -h; u <= h; ++u) {
    for (std::int64_t v = -h; v <= h; ++v) out.push_back({u, v});
  }
  return out;
}

bool in_box(const IntElem& x, std::int64_t h) { return std::llabs(x.u) <= h && std::llabs(x.v) <= h; }

void sort_canonical(std::vector<IntMatrix>& v) { std::sort(v.begin(), v.end(), canonical_less); }

// Solutions with first entry a = B[ia].
void solve_row(const IntArith& ar, const std::vector<IntElem>& B, std::size_t ia, std::int64_t h,
               std::vector<IntMatrix>& out) {
  const IntElem a = B[ia];
  const IntElem one{1, 0};
  if (a.u == 0 && a.v == 0) {
    // bc = -1: b a unit in the box, c = -1/b.
    for (const IntElem& b : B) {
      if (!ar.is_unit(b)) continue;
      const auto c = ar.div_exact({-1, 0}, b);
      if (!c || !in_box(*c, h)) continue;
      for (const IntElem& d : B) {
        const IntMatrix m{{a, b, *c, d}};
        if (is_sign_canonical(m)) out.push_back(m);
      }
    }
    return;
  }
  for (const IntElem& b : B) {
    for (const IntElem& c : B) {
      const auto d = ar.div_exact(ar.add(one, ar.mul(b, c)), a);
      if (!d || !in_box(*d, h)) continue;
      const IntMatrix m{{a, b, c, *d}};
      if (is_sign_canonical(m)) out.push_back(m);
    }
  }
}

}  // namespace

bool canonical_less(const IntMatrix& x, const IntMatrix& y) {
  const auto hx = height(x);
  const auto hy = height(y);
  if (hx != hy) return hx < hy;
  const auto lx = l1(x);
  const auto ly = l1(y);
  if (lx != ly) return lx < ly;
  for (int k = 0; k < 4; ++k) {
    const auto kx = entry_key(x.e[k]);
    const auto ky = entry_key(y.e[k]);
    if (kx != ky) return kx < ky;
  }
  return false;
}

std::vector<IntMatrix> enumerate_box_reference(std::int64_t d, std::int64_t h) {
  const IntArith ar(d);
  const auto B = box(h);
  std::vector<IntMatrix> out;
  for (const IntElem& a : B) {
    for (const IntElem& b : B) {
      for (const IntElem& c : B) {
        for (const IntElem& e : B) {
          const IntMatrix m{{a, b, c, e}};
          if (ar.det(m) == IntElem{1, 0} && is_sign_canonical(m)) out.push_back(m);
        }
      }
    }
  }
  sort_canonical(out);
  return out;
}

std::vector<IntMatrix> enumerate_box_serial(std::int64_t d, std::int64_t h) {
  const IntArith ar(d);
  const auto B = box(h);
  std::vector<IntMatrix> out;
  for (std::size_t ia = 0; ia < B.size(); ++ia) solve_row(ar, B, ia, h, out);
  sort_canonical(out);
  return out;
}

std::vector<IntMatrix> enumerate_box_parallel(std::int64_t d, std::int64_t h) {
  const IntArith ar(d);
  const auto B = box(h);
  std::vector<std::vector<IntMatrix>> rows(B.size());
  const auto n = static_cast<std::int64_t>(B.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ia = 0; ia < n; ++ia) {
    solve_row(ar, B, static_cast<std::size_t>(ia), h, rows[static_cast<std::size_t>(ia)]);
  }
  std::vector<IntMatrix> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  sort_canonical(out);
  return out;
}

std::vector<IntMatrix> enumerate_box(std::int64_t d, std::int64_t h, Exec exec) {
  if (h < 0) throw DomainError("enumeration height must be non-negative");
  return exec == Exec::Parallel ? enumerate_box_parallel(d, h) : enumerate_box_serial(d, h);
}

// ---------------------------------------------------------------------------

namespace {

// Keeps the first exception thrown inside a parallel region so it can be
// rethrown on the calling thread.
class ErrorSlot {
 public:
  void capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!err_) err_ = std::current_exception();
  }
  void rethrow() const {
    if (err_) std::rethrow_exception(err_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr err_;
};

}  // namespace

std::vector<std::size_t> filter_indices(std::size_t n, const std::function<bool(std::size_t)>& pred,
                                        Exec exec) {
  std::vector<std::size_t> out;
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pred(i)) out.push_back(i);
    }
    return out;
  }
  const int threads = omp_get_max_threads();
  std::vector<std::vector<std::size_t>> local(static_cast<std::size_t>(threads));
  ErrorSlot err;
  const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel num_threads(threads)
  {
    auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) {
      try {
        if (pred(static_cast<std::size_t>(i))) mine.push_back(static_cast<std::size_t>(i));
      } catch (...) {
        err.capture();
      }
    }
  }
  err.rethrow();
  // Static chunks are contiguous and in thread order.
  for (auto& l : local) out.insert(out.end(), l.begin(), l.end());
  return out;
}

std::optional<ArgMin> argmin(std::size_t n, const std::function<double(std::size_t)>& score,
                             Exec exec) {
  auto better = [](const ArgMin& x, const ArgMin& y) {
    return x.score < y.score || (x.score == y.score && x.index < y.index);
  };
  std::optional<ArgMin> best;
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) {
      const double s = score(i);
      if (std::isnan(s)) continue;
      const ArgMin cand{i, s};
      if (!best || better(cand, *best)) best = cand;
    }
    return best;
  }
  const int threads = omp_get_max_threads();
  std::vector<std::optional<ArgMin>> local(static_cast<std::size_t>(threads));
  ErrorSlot err;
  const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel num_threads(threads)
  {
    auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) {
      try {
        const double s = score(static_cast<std::size_t>(i));
        if (std::isnan(s)) continue;
        const ArgMin cand{static_cast<std::size_t>(i), s};
        if (!mine || better(cand, *mine)) mine = cand;
      } catch (...) {
        err.capture();
      }
    }
  }
  err.rethrow();
  for (const auto& l : local) {
    if (l && (!best || better(*l, *best))) best = l;
  }
  return best;
}

std::optional<std::size_t> find_first(std::size_t n, const std::function<bool(std::size_t)>& pred,
                                      Exec exec) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pred(i)) return i;
    }
    return std::nullopt;
  }
  const std::size_t block = 256 * static_cast<std::size_t>(omp_get_max_threads());
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t len = std::min(block, n - start);
    const auto hits = filter_indices(len, [&](std::size_t i) { return pred(start + i); }, exec);
    if (!hits.empty()) return start + hits.front();
  }
  return std::nullopt;
}

}  // namespace weyl
