#include <duflo/series.hpp>

#include <algorithm>
#include <stdexcept>

namespace duflo {

Series Series::one(unsigned order) {
  Series s(order);
  s.coeff[0] = 1;
  return s;
}

Series series_add(const Series& a, const Series& b) {
  Series out(std::min(a.order(), b.order()));
  for (unsigned k = 0; k <= out.order(); ++k)
    out.coeff[k] = a.coeff[k] + b.coeff[k];
  return out;
}

Series series_mul(const Series& a, const Series& b) {
  Series out(std::min(a.order(), b.order()));
  for (unsigned i = 0; i <= out.order(); ++i) {
    if (a.coeff[i] == 0) continue;
    for (unsigned j = 0; i + j <= out.order(); ++j)
      out.coeff[i + j] += a.coeff[i] * b.coeff[j];
  }
  return out;
}

Series series_log(const Series& f) {
  if (f.coeff[0] != 1)
    throw std::invalid_argument("series_log needs constant term 1");
  // g = log f: n g_n = n f_n - Σ_{k=1}^{n-1} k g_k f_{n-k}.
  Series g(f.order());
  for (unsigned n = 1; n <= f.order(); ++n) {
    Rational s = Rational(n) * f.coeff[n];
    for (unsigned k = 1; k < n; ++k)
      s -= Rational(k) * g.coeff[k] * f.coeff[n - k];
    g.coeff[n] = s / Rational(n);
  }
  return g;
}

Series series_exp(const Series& u) {
  if (u.coeff[0] != 0)
    throw std::invalid_argument("series_exp needs constant term 0");
  // h = exp u: n h_n = Σ_{k=1}^{n} k u_k h_{n-k},  h_0 = 1.
  Series h(u.order());
  h.coeff[0] = 1;
  for (unsigned n = 1; n <= u.order(); ++n) {
    Rational s(0);
    for (unsigned k = 1; k <= n; ++k)
      s += Rational(k) * u.coeff[k] * h.coeff[n - k];
    h.coeff[n] = s / Rational(n);
  }
  return h;
}

Series series_sqrt(const Series& f) {
  if (f.coeff[0] != 1)
    throw std::invalid_argument("series_sqrt needs constant term 1");
  // s·s = f with s_0 = 1: s_n = (f_n - Σ_{k=1}^{n-1} s_k s_{n-k}) / 2.
  Series s(f.order());
  s.coeff[0] = 1;
  for (unsigned n = 1; n <= f.order(); ++n) {
    Rational t = f.coeff[n];
    for (unsigned k = 1; k < n; ++k) t -= s.coeff[k] * s.coeff[n - k];
    s.coeff[n] = t / Rational(2);
  }
  return s;
}

Series sinh_half_over_half(unsigned order) {
  Series f(order);
  Rational pow4(1);
  for (unsigned n = 0; 2 * n <= order; ++n) {
    f.coeff[2 * n] = Rational(1) / (pow4 * factorial(2 * n + 1));
    pow4 *= 4;
  }
  return f;
}

}  // namespace duflo
