#include "tpk/eigen.hpp"

#include <cfloat>
#include <cmath>

namespace tpk {

namespace {

// Iterative two-sided diagonal scaling (powers of the radix, so entries are
// rescaled without rounding) until every row/column pair is roughly
// balanced.  Similarity transform: the spectrum is unchanged.
void balance(Matrix<double>& a) {
  const int n = a.rows();
  const double radix = 2.0;
  const double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          c += std::fabs(a(j, i));
          r += std::fabs(a(i, j));
        }
      if (c != 0.0 && r != 0.0) {
        double g = r / radix;
        double f = 1.0;
        const double s = c + r;
        while (c < g) {
          f *= radix;
          c *= sqrdx;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= sqrdx;
        }
        if ((c + r) / f < 0.95 * s) {
          done = false;
          const double ginv = 1.0 / f;
          for (int j = 0; j < n; ++j) a(i, j) *= ginv;
          for (int j = 0; j < n; ++j) a(j, i) *= f;
        }
      }
    }
  }
}

// Reduction to upper Hessenberg form by pivoted elementary similarity
// transformations.  On return everything below the first subdiagonal is
// zeroed explicitly.
void hessenberg(Matrix<double>& a) {
  const int n = a.rows();
  for (int m = 1; m < n - 1; ++m) {
    double x = 0.0;
    int pivot = m;
    for (int j = m; j < n; ++j)
      if (std::fabs(a(j, m - 1)) > std::fabs(x)) {
        x = a(j, m - 1);
        pivot = j;
      }
    if (pivot != m) {
      for (int j = m - 1; j < n; ++j) std::swap(a(pivot, j), a(m, j));
      for (int j = 0; j < n; ++j) std::swap(a(j, pivot), a(j, m));
    }
    if (x != 0.0) {
      for (int i = m + 1; i < n; ++i) {
        double y = a(i, m - 1);
        if (y != 0.0) {
          y /= x;
          a(i, m - 1) = y;
          for (int j = m; j < n; ++j) a(i, j) -= y * a(m, j);
          for (int j = 0; j < n; ++j) a(j, m) += y * a(j, i);
        }
      }
    }
  }
  for (int i = 2; i < n; ++i)
    for (int j = 0; j < i - 1; ++j) a(i, j) = 0.0;
}

// Implicit double-shift QR on an upper Hessenberg matrix.  Classical
// formulation (the hqr lineage): deflation against a relative epsilon test,
// exceptional shifts at sweeps 10 and 20 of each eigenvalue, hard failure at
// 30.  Destroys the input; returns eigenvalues and the sweep count.
std::vector<std::complex<double>> hqr(Matrix<double>& a, int& sweeps) {
  const int n = a.rows();
  std::vector<std::complex<double>> wout(n);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a(i, j));
  if (anorm == 0.0) return wout;  // the zero matrix

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      // Look for a negligible subdiagonal element to split at.  The second
      // test is an absolute floor: heavily graded matrices (entries spanning
      // a hundred orders of magnitude) have whole trailing blocks below
      // eps * anorm whose bulge chase underflows to zero before reaching
      // them, so the relative test alone never fires there.  Splitting at
      // the floor perturbs the matrix by no more than the backward error
      // the algorithm commits anyway.
      for (l = nn; l >= 1; --l) {
        double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(a(l, l - 1)) <= DBL_EPSILON * s ||
            std::fabs(a(l, l - 1)) <= DBL_EPSILON * anorm) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        // One real eigenvalue isolated.
        wout[nn--] = x + t;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          // A 2x2 block isolated: real or conjugate pair.
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::fabs(q));
          x += t;
          if (q >= 0.0) {
            z = p + (p >= 0.0 ? std::fabs(z) : -std::fabs(z));
            wout[nn - 1] = wout[nn] = x + z;
            if (z != 0.0) wout[nn] = x - w / z;
          } else {
            wout[nn - 1] = std::complex<double>(x + p, z);
            wout[nn] = std::complex<double>(x + p, -z);
          }
          nn -= 2;
        } else {
          if (its == 30)
            throw ConvergenceError(
                "eigenvalue QR stalled at index " + std::to_string(nn) +
                    " after 30 sweeps",
                sweeps);
          if (its == 10 || its == 20) {
            // Exceptional shift to break symmetric stalls.
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            const double s =
                std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          ++sweeps;
          // Form the first column of (H - s1)(H - s2) and chase the bulge.
          int m;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (m = nn - 2; m >= l; --m) {
            z = a(m, m);
            const double rr = x - z;
            const double ss = y - z;
            p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - rr - ss;
            r = a(m + 2, m + 1);
            const double scale = std::fabs(p) + std::fabs(q) + std::fabs(r);
            if (scale != 0.0) {
              p /= scale;
              q /= scale;
              r /= scale;
            }
            if (m == l) break;
            const double u =
                std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            const double v =
                std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) +
                                std::fabs(a(m + 1, m + 1)));
            if (u <= DBL_EPSILON * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double norm = std::sqrt(p * p + q * q + r * r);
            const double s = (p >= 0.0 ? norm : -norm);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return wout;
}

}  // namespace

EigenResult eigenvalues(const Matrix<double>& a) {
  if (!a.square()) throw DimensionError("eigenvalues of a non-square matrix");
  EigenResult res;
  const int n = a.rows();
  if (n == 0) return res;
  Matrix<double> work = a;
  balance(work);
  hessenberg(work);
  res.values = hqr(work, res.iterations);
  res.backwardErrorBound = 10.0 * n * DBL_EPSILON * infNorm(a);
  return res;
}

std::vector<std::complex<double>> sortedEigenvalues(const Matrix<double>& a) {
  auto vals = eigenvalues(a).values;
  std::sort(vals.begin(), vals.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              const double ax = std::abs(x), ay = std::abs(y);
              if (ax != ay) return ax > ay;
              if (x.real() != y.real()) return x.real() > y.real();
              return x.imag() > y.imag();
            });
  return vals;
}

}  // namespace tpk
