// Hermitian eigensolver: Householder reduction to a real symmetric tridiagonal
// matrix, then implicit-shift QL with eigenvector accumulation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "projcalc/error.hpp"
#include "projcalc/spectral.hpp"

namespace projcalc {

namespace {

constexpr int kMaxQlIterations = 60;
constexpr std::size_t kParallelRows = 48;

void require_hermitian(const DenseMatrix& h, double tol) {
  if (!h.is_square()) throw Error(Errc::NotSquare, "eigendecomposition of non-square matrix");
  const double defect = hermitian_defect(h);
  if (defect > tol * (1.0 + frobenius_norm(h))) {
    throw Error(Errc::NotHermitian, "||H - H*|| = " + std::to_string(defect));
  }
}

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> sub;  // sub[i] couples i and i+1; sub[n-1] = 0
  DenseMatrix basis;        // H = basis * T * basis*
};

// Reduces the Hermitian matrix a (overwritten) to real tridiagonal form.
Tridiagonal tridiagonalize(DenseMatrix a, bool want_basis) {
  const std::size_t n = a.rows();
  DenseMatrix q = want_basis ? DenseMatrix::identity(n) : DenseMatrix{};
  std::vector<Complex> v(n);
  std::vector<Complex> p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t lo = k + 1;
    double alpha = 0.0;
    for (std::size_t i = lo; i < n; ++i) alpha += std::norm(a(i, k));
    alpha = std::sqrt(alpha);
    double tail = 0.0;
    for (std::size_t i = lo + 1; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;  // already reduced in this column

    const Complex x0 = a(lo, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
    for (std::size_t i = lo; i < n; ++i) v[i] = a(i, k);
    v[lo] += phase * alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = lo; i < n; ++i) vnorm2 += std::norm(v[i]);
    const double tau = 2.0 / vnorm2;

    // p = tau * B v over the trailing block B = a[lo:, lo:]
    const bool parallel = n - lo >= kParallelRows;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(lo); ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      Complex sum{0.0, 0.0};
      for (std::size_t j = lo; j < n; ++j) sum += a(i, j) * v[j];
      p[i] = tau * sum;
    }
    Complex vp{0.0, 0.0};
    for (std::size_t i = lo; i < n; ++i) vp += std::conj(v[i]) * p[i];
    const double kappa = 0.5 * tau * vp.real();
    for (std::size_t i = lo; i < n; ++i) p[i] -= kappa * v[i];

    // B <- B - v p* - p v*
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(lo); ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      for (std::size_t j = lo; j < n; ++j) {
        a(i, j) -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);
      }
    }
    a(lo, k) = -phase * alpha;
    a(k, lo) = std::conj(a(lo, k));
    for (std::size_t i = lo + 1; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }

    if (want_basis) {
      // q[:, lo:] <- q[:, lo:] (I - tau v v*)
#pragma omp parallel for schedule(static) if (parallel)
      for (std::ptrdiff_t rr = 0; rr < static_cast<std::ptrdiff_t>(n); ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        Complex qv{0.0, 0.0};
        for (std::size_t j = lo; j < n; ++j) qv += q(r, j) * v[j];
        qv *= tau;
        for (std::size_t j = lo; j < n; ++j) q(r, j) -= qv * std::conj(v[j]);
      }
    }
  }

  Tridiagonal t;
  t.diag.resize(n);
  t.sub.assign(n, 0.0);
  // Rotate the complex subdiagonal onto the positive reals with a diagonal unitary.
  Complex delta{1.0, 0.0};
  std::vector<Complex> deltas(n, Complex{1.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = a(i, i).real();
    if (i + 1 < n) {
      const Complex s = a(i + 1, i);
      const double m = std::abs(s);
      t.sub[i] = m;
      if (m > 0.0) delta *= s / m;
      deltas[i + 1] = delta;
    }
  }
  if (want_basis) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) q(r, c) *= deltas[c];
    }
    t.basis = std::move(q);
  }
  return t;
}

// Implicit QL on (d, e); rotations are applied to the columns of z when present.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, DenseMatrix* z) {
  const int n = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) {
          throw Error(Errc::NoConvergence, "tridiagonal QL exceeded iteration limit");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            const auto ci = static_cast<std::size_t>(i);
            for (std::size_t k = 0; k < z->rows(); ++k) {
              const Complex zf = (*z)(k, ci + 1);
              (*z)(k, ci + 1) = s * (*z)(k, ci) + c * zf;
              (*z)(k, ci) = c * (*z)(k, ci) - s * zf;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  return order;
}

}  // namespace

HermitianEig hermitian_eigendecompose(const DenseMatrix& h, double hermitian_tol) {
  require_hermitian(h, hermitian_tol);
  const std::size_t n = h.rows();
  Tridiagonal t = tridiagonalize(hermitian_part(h), true);
  tridiagonal_ql(t.diag, t.sub, &t.basis);

  const auto order = ascending_order(t.diag);
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = DenseMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = t.diag[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = t.basis(r, order[c]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const DenseMatrix& h, double hermitian_tol) {
  require_hermitian(h, hermitian_tol);
  Tridiagonal t = tridiagonalize(hermitian_part(h), false);
  tridiagonal_ql(t.diag, t.sub, nullptr);
  std::sort(t.diag.begin(), t.diag.end());
  return t.diag;
}

namespace serial {

HermitianEig jacobi_eigendecompose(const DenseMatrix& h, double hermitian_tol) {
  require_hermitian(h, hermitian_tol);
  const std::size_t n = h.rows();
  DenseMatrix a = hermitian_part(h);
  DenseMatrix v = DenseMatrix::identity(n);
  const double scale = frobenius_norm(a);
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (std::sqrt(2.0 * off) <= 1e-15 * scale || off == 0.0) break;
    if (sweep == kMaxSweeps) throw Error(Errc::NoConvergence, "Jacobi sweep limit reached");

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double gabs = std::abs(g);
        if (gabs == 0.0) continue;
        const Complex phase = g / gabs;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * gabs);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpq = s * phase;
        const Complex jqp = -s * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // a <- a J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {  // a <- J* a
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // v <- v J
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
      }
    }
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  const auto order = ascending_order(diag);
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = DenseMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = diag[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

}  // namespace serial

}  // namespace projcalc
