#include "dataudit/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <vector>

namespace dataudit::kernels {

namespace {
std::atomic<Exec> g_mode{Exec::parallel};
}

Exec execution_mode() { return g_mode.load(std::memory_order_relaxed); }
void set_execution_mode(Exec mode) { g_mode.store(mode, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// Serial reference kernels
// ---------------------------------------------------------------------------

namespace serial {

void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const Conv2dDims& d) {
  const int oh = d.out_h(), ow = d.out_w();
  const int icg = d.in_c_per_group(), ocg = d.out_c_per_group();
  const std::size_t x_plane = std::size_t(d.in_h) * d.in_w;
  const std::size_t x_sample = std::size_t(d.in_c) * x_plane;
  const std::size_t y_plane = std::size_t(oh) * ow;
  const std::size_t y_sample = std::size_t(d.out_c) * y_plane;
  const std::size_t w_per_oc = std::size_t(icg) * d.ksize * d.ksize;

  for (int ni = 0; ni < d.n; ++ni) {
    for (int oc = 0; oc < d.out_c; ++oc) {
      const int g = oc / ocg;
      const double* wc = w + std::size_t(oc) * w_per_oc;
      double* yc = y + ni * y_sample + oc * y_plane;
      for (int r = 0; r < oh; ++r) {
        for (int col = 0; col < ow; ++col) yc[std::size_t(r) * ow + col] = b[oc];
      }
      for (int ic = 0; ic < icg; ++ic) {
        const double* xc = x + ni * x_sample + (std::size_t(g) * icg + ic) * x_plane;
        const double* wk = wc + std::size_t(ic) * d.ksize * d.ksize;
        for (int kh = 0; kh < d.ksize; ++kh) {
          for (int kw = 0; kw < d.ksize; ++kw) {
            const double wv = wk[kh * d.ksize + kw];
            for (int r = 0; r < oh; ++r) {
              const int ih = r - d.pad + kh;
              if (ih < 0 || ih >= d.in_h) continue;
              const double* xrow = xc + std::size_t(ih) * d.in_w;
              double* yrow = yc + std::size_t(r) * ow;
              const int c0 = std::max(0, d.pad - kw);
              const int c1 = std::min(ow, d.in_w + d.pad - kw);
              for (int col = c0; col < c1; ++col) yrow[col] += wv * xrow[col - d.pad + kw];
            }
          }
        }
      }
    }
  }
}

void conv2d_backward_input(const double* gy, const double* w, double* gx, const Conv2dDims& d) {
  const int oh = d.out_h(), ow = d.out_w();
  const int icg = d.in_c_per_group(), ocg = d.out_c_per_group();
  const std::size_t x_plane = std::size_t(d.in_h) * d.in_w;
  const std::size_t x_sample = std::size_t(d.in_c) * x_plane;
  const std::size_t y_plane = std::size_t(oh) * ow;
  const std::size_t y_sample = std::size_t(d.out_c) * y_plane;
  const std::size_t w_per_oc = std::size_t(icg) * d.ksize * d.ksize;

  for (int ni = 0; ni < d.n; ++ni) {
    for (int ic = 0; ic < d.in_c; ++ic) {
      const int g = ic / icg;
      const int ic_in_g = ic % icg;
      double* gxc = gx + ni * x_sample + std::size_t(ic) * x_plane;
      std::memset(gxc, 0, x_plane * sizeof(double));
      for (int oc_in_g = 0; oc_in_g < ocg; ++oc_in_g) {
        const int oc = g * ocg + oc_in_g;
        const double* gyc = gy + ni * y_sample + std::size_t(oc) * y_plane;
        const double* wk = w + std::size_t(oc) * w_per_oc + std::size_t(ic_in_g) * d.ksize * d.ksize;
        for (int kh = 0; kh < d.ksize; ++kh) {
          for (int kw = 0; kw < d.ksize; ++kw) {
            const double wv = wk[kh * d.ksize + kw];
            // x[ih][iw] feeds y[ih+pad-kh][iw+pad-kw]
            for (int ih = 0; ih < d.in_h; ++ih) {
              const int r = ih + d.pad - kh;
              if (r < 0 || r >= oh) continue;
              const double* gyrow = gyc + std::size_t(r) * ow;
              double* gxrow = gxc + std::size_t(ih) * d.in_w;
              const int c0 = std::max(0, kw - d.pad);
              const int c1 = std::min(d.in_w, ow + kw - d.pad);
              for (int iw = c0; iw < c1; ++iw) gxrow[iw] += wv * gyrow[iw + d.pad - kw];
            }
          }
        }
      }
    }
  }
}

void conv2d_backward_params(const double* gy, const double* x, double* gw, double* gb,
                            const Conv2dDims& d) {
  const int oh = d.out_h(), ow = d.out_w();
  const int icg = d.in_c_per_group(), ocg = d.out_c_per_group();
  const std::size_t x_plane = std::size_t(d.in_h) * d.in_w;
  const std::size_t x_sample = std::size_t(d.in_c) * x_plane;
  const std::size_t y_plane = std::size_t(oh) * ow;
  const std::size_t y_sample = std::size_t(d.out_c) * y_plane;
  const std::size_t w_per_oc = std::size_t(icg) * d.ksize * d.ksize;

  for (int oc = 0; oc < d.out_c; ++oc) {
    const int g = oc / ocg;
    double* gwc = gw + std::size_t(oc) * w_per_oc;
    std::memset(gwc, 0, w_per_oc * sizeof(double));
    double bias_acc = 0.0;
    for (int ni = 0; ni < d.n; ++ni) {
      const double* gyc = gy + ni * y_sample + std::size_t(oc) * y_plane;
      for (std::size_t i = 0; i < y_plane; ++i) bias_acc += gyc[i];
      for (int ic = 0; ic < icg; ++ic) {
        const double* xc = x + ni * x_sample + (std::size_t(g) * icg + ic) * x_plane;
        double* gwk = gwc + std::size_t(ic) * d.ksize * d.ksize;
        for (int kh = 0; kh < d.ksize; ++kh) {
          for (int kw = 0; kw < d.ksize; ++kw) {
            double acc = 0.0;
            for (int r = 0; r < oh; ++r) {
              const int ih = r - d.pad + kh;
              if (ih < 0 || ih >= d.in_h) continue;
              const double* xrow = xc + std::size_t(ih) * d.in_w;
              const double* gyrow = gyc + std::size_t(r) * ow;
              const int c0 = std::max(0, d.pad - kw);
              const int c1 = std::min(ow, d.in_w + d.pad - kw);
              for (int col = c0; col < c1; ++col) acc += gyrow[col] * xrow[col - d.pad + kw];
            }
            gwk[kh * d.ksize + kw] += acc;
          }
        }
      }
    }
    gb[oc] = bias_acc;
  }
}

void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int in_dim,
                   int out_dim) {
  for (int ni = 0; ni < n; ++ni) {
    const double* xi = x + std::size_t(ni) * in_dim;
    double* yi = y + std::size_t(ni) * out_dim;
    for (int o = 0; o < out_dim; ++o) {
      const double* wo = w + std::size_t(o) * in_dim;
      double acc = b[o];
      for (int i = 0; i < in_dim; ++i) acc += wo[i] * xi[i];
      yi[o] = acc;
    }
  }
}

void dense_backward_input(const double* gy, const double* w, double* gx, int n, int in_dim,
                          int out_dim) {
  for (int ni = 0; ni < n; ++ni) {
    const double* gyi = gy + std::size_t(ni) * out_dim;
    double* gxi = gx + std::size_t(ni) * in_dim;
    std::memset(gxi, 0, std::size_t(in_dim) * sizeof(double));
    for (int o = 0; o < out_dim; ++o) {
      const double g = gyi[o];
      const double* wo = w + std::size_t(o) * in_dim;
      for (int i = 0; i < in_dim; ++i) gxi[i] += g * wo[i];
    }
  }
}

void dense_backward_params(const double* gy, const double* x, double* gw, double* gb, int n,
                           int in_dim, int out_dim) {
  for (int o = 0; o < out_dim; ++o) {
    double* gwo = gw + std::size_t(o) * in_dim;
    std::memset(gwo, 0, std::size_t(in_dim) * sizeof(double));
    double bias_acc = 0.0;
    for (int ni = 0; ni < n; ++ni) {
      const double g = gy[std::size_t(ni) * out_dim + o];
      bias_acc += g;
      const double* xi = x + std::size_t(ni) * in_dim;
      for (int i = 0; i < in_dim; ++i) gwo[i] += g * xi[i];
    }
    gb[o] = bias_acc;
  }
}

void relu_forward(const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward(const double* x, const double* gy, double* gx, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) gx[i] = x[i] > 0.0 ? gy[i] : 0.0;
}

void maxpool2_forward(const double* x, double* y, std::int32_t* argmax, int n, int c, int h,
                      int w) {
  const int oh = h / 2, ow = w / 2;
  const std::size_t planes = std::size_t(n) * c;
  for (std::size_t p = 0; p < planes; ++p) {
    const double* xp = x + p * h * w;
    double* yp = y + p * std::size_t(oh) * ow;
    std::int32_t* ap = argmax + p * std::size_t(oh) * ow;
    for (int r = 0; r < oh; ++r) {
      for (int col = 0; col < ow; ++col) {
        const int i0 = (2 * r) * w + 2 * col;
        int best = i0;
        double v = xp[i0];
        if (xp[i0 + 1] > v) { v = xp[i0 + 1]; best = i0 + 1; }
        if (xp[i0 + w] > v) { v = xp[i0 + w]; best = i0 + w; }
        if (xp[i0 + w + 1] > v) { v = xp[i0 + w + 1]; best = i0 + w + 1; }
        yp[std::size_t(r) * ow + col] = v;
        ap[std::size_t(r) * ow + col] = best;
      }
    }
  }
}

void maxpool2_backward(const double* gy, const std::int32_t* argmax, double* gx, int n, int c,
                       int h, int w) {
  const int oh = h / 2, ow = w / 2;
  const std::size_t planes = std::size_t(n) * c;
  for (std::size_t p = 0; p < planes; ++p) {
    const double* gyp = gy + p * std::size_t(oh) * ow;
    const std::int32_t* ap = argmax + p * std::size_t(oh) * ow;
    double* gxp = gx + p * std::size_t(h) * w;
    std::memset(gxp, 0, std::size_t(h) * w * sizeof(double));
    for (std::size_t i = 0; i < std::size_t(oh) * ow; ++i) gxp[ap[i]] += gyp[i];
  }
}

double softmax_ce_forward(const double* logits, const int* labels, double* probs, int n, int k) {
  double loss = 0.0;
  for (int ni = 0; ni < n; ++ni) {
    const double* l = logits + std::size_t(ni) * k;
    double* p = probs + std::size_t(ni) * k;
    double m = l[0];
    for (int j = 1; j < k; ++j) m = std::max(m, l[j]);
    double s = 0.0;
    for (int j = 0; j < k; ++j) {
      p[j] = std::exp(l[j] - m);
      s += p[j];
    }
    const double inv = 1.0 / s;
    for (int j = 0; j < k; ++j) p[j] *= inv;
    loss += -(l[labels[ni]] - m - std::log(s));
  }
  return loss;
}

void softmax_ce_backward(const double* probs, const int* labels, double* glogits, int n, int k,
                         double scale) {
  for (int ni = 0; ni < n; ++ni) {
    const double* p = probs + std::size_t(ni) * k;
    double* g = glogits + std::size_t(ni) * k;
    for (int j = 0; j < k; ++j) g[j] = p[j] * scale;
    g[labels[ni]] -= scale;
  }
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP kernels. Each output element is owned by one thread and accumulated
// in the same order as the serial reference, so results are bitwise equal.
// ---------------------------------------------------------------------------

namespace par {

void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const Conv2dDims& d) {
  const int oh = d.out_h(), ow = d.out_w();
  const int icg = d.in_c_per_group(), ocg = d.out_c_per_group();
  const std::size_t x_plane = std::size_t(d.in_h) * d.in_w;
  const std::size_t x_sample = std::size_t(d.in_c) * x_plane;
  const std::size_t y_plane = std::size_t(oh) * ow;
  const std::size_t y_sample = std::size_t(d.out_c) * y_plane;
  const std::size_t w_per_oc = std::size_t(icg) * d.ksize * d.ksize;

#pragma omp parallel for collapse(2) schedule(static)
  for (int ni = 0; ni < d.n; ++ni) {
    for (int oc = 0; oc < d.out_c; ++oc) {
      const int g = oc / ocg;
      const double* wc = w + std::size_t(oc) * w_per_oc;
      double* yc = y + ni * y_sample + oc * y_plane;
      for (int r = 0; r < oh; ++r) {
        for (int col = 0; col < ow; ++col) yc[std::size_t(r) * ow + col] = b[oc];
      }
      for (int ic = 0; ic < icg; ++ic) {
        const double* xc = x + ni * x_sample + (std::size_t(g) * icg + ic) * x_plane;
        const double* wk = wc + std::size_t(ic) * d.ksize * d.ksize;
        for (int kh = 0; kh < d.ksize; ++kh) {
          for (int kw = 0; kw < d.ksize; ++kw) {
            const double wv = wk[kh * d.ksize + kw];
            for (int r = 0; r < oh; ++r) {
              const int ih = r - d.pad + kh;
              if (ih < 0 || ih >= d.in_h) continue;
              const double* xrow = xc + std::size_t(ih) * d.in_w;
              double* yrow = yc + std::size_t(r) * ow;
              const int c0 = std::max(0, d.pad - kw);
              const int c1 = std::min(ow, d.in_w + d.pad - kw);
              for (int col = c0; col < c1; ++col) yrow[col] += wv * xrow[col - d.pad + kw];
            }
          }
        }
      }
    }
  }
}

void conv2d_backward_input(const double* gy, const double* w, double* gx, const Conv2dDims& d) {
  const int oh = d.out_h(), ow = d.out_w();
  const int icg = d.in_c_per_group(), ocg = d.out_c_per_group();
  const std::size_t x_plane = std::size_t(d.in_h) * d.in_w;
  const std::size_t x_sample = std::size_t(d.in_c) * x_plane;
  const std::size_t y_plane = std::size_t(oh) * ow;
  const std::size_t y_sample = std::size_t(d.out_c) * y_plane;
  const std::size_t w_per_oc = std::size_t(icg) * d.ksize * d.ksize;

#pragma omp parallel for collapse(2) schedule(static)
  for (int ni = 0; ni < d.n; ++ni) {
    for (int ic = 0; ic < d.in_c; ++ic) {
      const int g = ic / icg;
      const int ic_in_g = ic % icg;
      double* gxc = gx + ni * x_sample + std::size_t(ic) * x_plane;
      std::memset(gxc, 0, x_plane * sizeof(double));
      for (int oc_in_g = 0; oc_in_g < ocg; ++oc_in_g) {
        const int oc = g * ocg + oc_in_g;
        const double* gyc = gy + ni * y_sample + std::size_t(oc) * y_plane;
        const double* wk = w + std::size_t(oc) * w_per_oc + std::size_t(ic_in_g) * d.ksize * d.ksize;
        for (int kh = 0; kh < d.ksize; ++kh) {
          for (int kw = 0; kw < d.ksize; ++kw) {
            const double wv = wk[kh * d.ksize + kw];
            for (int ih = 0; ih < d.in_h; ++ih) {
              const int r = ih + d.pad - kh;
              if (r < 0 || r >= oh) continue;
              const double* gyrow = gyc + std::size_t(r) * ow;
              double* gxrow = gxc + std::size_t(ih) * d.in_w;
              const int c0 = std::max(0, kw - d.pad);
              const int c1 = std::min(d.in_w, ow + kw - d.pad);
              for (int iw = c0; iw < c1; ++iw) gxrow[iw] += wv * gyrow[iw + d.pad - kw];
            }
          }
        }
      }
    }
  }
}

void conv2d_backward_params(const double* gy, const double* x, double* gw, double* gb,
                            const Conv2dDims& d) {
  const int oh = d.out_h(), ow = d.out_w();
  const int icg = d.in_c_per_group(), ocg = d.out_c_per_group();
  const std::size_t x_plane = std::size_t(d.in_h) * d.in_w;
  const std::size_t x_sample = std::size_t(d.in_c) * x_plane;
  const std::size_t y_plane = std::size_t(oh) * ow;
  const std::size_t y_sample = std::size_t(d.out_c) * y_plane;
  const std::size_t w_per_oc = std::size_t(icg) * d.ksize * d.ksize;

#pragma omp parallel for schedule(static)
  for (int oc = 0; oc < d.out_c; ++oc) {
    const int g = oc / ocg;
    double* gwc = gw + std::size_t(oc) * w_per_oc;
    std::memset(gwc, 0, w_per_oc * sizeof(double));
    double bias_acc = 0.0;
    for (int ni = 0; ni < d.n; ++ni) {
      const double* gyc = gy + ni * y_sample + std::size_t(oc) * y_plane;
      for (std::size_t i = 0; i < y_plane; ++i) bias_acc += gyc[i];
      for (int ic = 0; ic < icg; ++ic) {
        const double* xc = x + ni * x_sample + (std::size_t(g) * icg + ic) * x_plane;
        double* gwk = gwc + std::size_t(ic) * d.ksize * d.ksize;
        for (int kh = 0; kh < d.ksize; ++kh) {
          for (int kw = 0; kw < d.ksize; ++kw) {
            double acc = 0.0;
            for (int r = 0; r < oh; ++r) {
              const int ih = r - d.pad + kh;
              if (ih < 0 || ih >= d.in_h) continue;
              const double* xrow = xc + std::size_t(ih) * d.in_w;
              const double* gyrow = gyc + std::size_t(r) * ow;
              const int c0 = std::max(0, d.pad - kw);
              const int c1 = std::min(ow, d.in_w + d.pad - kw);
              for (int col = c0; col < c1; ++col) acc += gyrow[col] * xrow[col - d.pad + kw];
            }
            gwk[kh * d.ksize + kw] += acc;
          }
        }
      }
    }
    gb[oc] = bias_acc;
  }
}

void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int in_dim,
                   int out_dim) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int ni = 0; ni < n; ++ni) {
    for (int o = 0; o < out_dim; ++o) {
      const double* xi = x + std::size_t(ni) * in_dim;
      const double* wo = w + std::size_t(o) * in_dim;
      double acc = b[o];
      for (int i = 0; i < in_dim; ++i) acc += wo[i] * xi[i];
      y[std::size_t(ni) * out_dim + o] = acc;
    }
  }
}

void dense_backward_input(const double* gy, const double* w, double* gx, int n, int in_dim,
                          int out_dim) {
#pragma omp parallel for schedule(static)
  for (int ni = 0; ni < n; ++ni) {
    const double* gyi = gy + std::size_t(ni) * out_dim;
    double* gxi = gx + std::size_t(ni) * in_dim;
    std::memset(gxi, 0, std::size_t(in_dim) * sizeof(double));
    for (int o = 0; o < out_dim; ++o) {
      const double g = gyi[o];
      const double* wo = w + std::size_t(o) * in_dim;
      for (int i = 0; i < in_dim; ++i) gxi[i] += g * wo[i];
    }
  }
}

void dense_backward_params(const double* gy, const double* x, double* gw, double* gb, int n,
                           int in_dim, int out_dim) {
#pragma omp parallel for schedule(static)
  for (int o = 0; o < out_dim; ++o) {
    double* gwo = gw + std::size_t(o) * in_dim;
    std::memset(gwo, 0, std::size_t(in_dim) * sizeof(double));
    double bias_acc = 0.0;
    for (int ni = 0; ni < n; ++ni) {
      const double g = gy[std::size_t(ni) * out_dim + o];
      bias_acc += g;
      const double* xi = x + std::size_t(ni) * in_dim;
      for (int i = 0; i < in_dim; ++i) gwo[i] += g * xi[i];
    }
    gb[o] = bias_acc;
  }
}

void relu_forward(const double* x, double* y, std::size_t len) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(len); ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward(const double* x, const double* gy, double* gx, std::size_t len) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(len); ++i) gx[i] = x[i] > 0.0 ? gy[i] : 0.0;
}

void maxpool2_forward(const double* x, double* y, std::int32_t* argmax, int n, int c, int h,
                      int w) {
  const int oh = h / 2, ow = w / 2;
  const std::ptrdiff_t planes = std::ptrdiff_t(n) * c;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < planes; ++p) {
    const double* xp = x + p * h * w;
    double* yp = y + p * std::ptrdiff_t(oh) * ow;
    std::int32_t* ap = argmax + p * std::ptrdiff_t(oh) * ow;
    for (int r = 0; r < oh; ++r) {
      for (int col = 0; col < ow; ++col) {
        const int i0 = (2 * r) * w + 2 * col;
        int best = i0;
        double v = xp[i0];
        if (xp[i0 + 1] > v) { v = xp[i0 + 1]; best = i0 + 1; }
        if (xp[i0 + w] > v) { v = xp[i0 + w]; best = i0 + w; }
        if (xp[i0 + w + 1] > v) { v = xp[i0 + w + 1]; best = i0 + w + 1; }
        yp[std::size_t(r) * ow + col] = v;
        ap[std::size_t(r) * ow + col] = best;
      }
    }
  }
}

void maxpool2_backward(const double* gy, const std::int32_t* argmax, double* gx, int n, int c,
                       int h, int w) {
  const int oh = h / 2, ow = w / 2;
  const std::ptrdiff_t planes = std::ptrdiff_t(n) * c;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < planes; ++p) {
    const double* gyp = gy + p * std::ptrdiff_t(oh) * ow;
    const std::int32_t* ap = argmax + p * std::ptrdiff_t(oh) * ow;
    double* gxp = gx + p * std::ptrdiff_t(h) * w;
    std::memset(gxp, 0, std::size_t(h) * w * sizeof(double));
    for (std::size_t i = 0; i < std::size_t(oh) * ow; ++i) gxp[ap[i]] += gyp[i];
  }
}

double softmax_ce_forward(const double* logits, const int* labels, double* probs, int n, int k) {
  // Per-row losses land in fixed slots; the final sum runs serially so the
  // reduction order matches the reference.
  std::vector<double> row_loss(std::size_t(n));
#pragma omp parallel for schedule(static)
  for (int ni = 0; ni < n; ++ni) {
    const double* l = logits + std::size_t(ni) * k;
    double* p = probs + std::size_t(ni) * k;
    double m = l[0];
    for (int j = 1; j < k; ++j) m = std::max(m, l[j]);
    double s = 0.0;
    for (int j = 0; j < k; ++j) {
      p[j] = std::exp(l[j] - m);
      s += p[j];
    }
    const double inv = 1.0 / s;
    for (int j = 0; j < k; ++j) p[j] *= inv;
    row_loss[ni] = -(l[labels[ni]] - m - std::log(s));
  }
  double loss = 0.0;
  for (int ni = 0; ni < n; ++ni) loss += row_loss[ni];
  return loss;
}

void softmax_ce_backward(const double* probs, const int* labels, double* glogits, int n, int k,
                         double scale) {
#pragma omp parallel for schedule(static)
  for (int ni = 0; ni < n; ++ni) {
    const double* p = probs + std::size_t(ni) * k;
    double* g = glogits + std::size_t(ni) * k;
    for (int j = 0; j < k; ++j) g[j] = p[j] * scale;
    g[labels[ni]] -= scale;
  }
}

}  // namespace par

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

#define DATAUDIT_DISPATCH(fn, ...)                                  \
  do {                                                              \
    if (execution_mode() == Exec::parallel) return par::fn(__VA_ARGS__); \
    return serial::fn(__VA_ARGS__);                                 \
  } while (0)

void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const Conv2dDims& d) {
  DATAUDIT_DISPATCH(conv2d_forward, x, w, b, y, d);
}
void conv2d_backward_input(const double* gy, const double* w, double* gx, const Conv2dDims& d) {
  DATAUDIT_DISPATCH(conv2d_backward_input, gy, w, gx, d);
}
void conv2d_backward_params(const double* gy, const double* x, double* gw, double* gb,
                            const Conv2dDims& d) {
  DATAUDIT_DISPATCH(conv2d_backward_params, gy, x, gw, gb, d);
}
void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int in_dim,
                   int out_dim) {
  DATAUDIT_DISPATCH(dense_forward, x, w, b, y, n, in_dim, out_dim);
}
void dense_backward_input(const double* gy, const double* w, double* gx, int n, int in_dim,
                          int out_dim) {
  DATAUDIT_DISPATCH(dense_backward_input, gy, w, gx, n, in_dim, out_dim);
}
void dense_backward_params(const double* gy, const double* x, double* gw, double* gb, int n,
                           int in_dim, int out_dim) {
  DATAUDIT_DISPATCH(dense_backward_params, gy, x, gw, gb, n, in_dim, out_dim);
}
void relu_forward(const double* x, double* y, std::size_t len) {
  DATAUDIT_DISPATCH(relu_forward, x, y, len);
}
void relu_backward(const double* x, const double* gy, double* gx, std::size_t len) {
  DATAUDIT_DISPATCH(relu_backward, x, gy, gx, len);
}
void maxpool2_forward(const double* x, double* y, std::int32_t* argmax, int n, int c, int h,
                      int w) {
  DATAUDIT_DISPATCH(maxpool2_forward, x, y, argmax, n, c, h, w);
}
void maxpool2_backward(const double* gy, const std::int32_t* argmax, double* gx, int n, int c,
                       int h, int w) {
  DATAUDIT_DISPATCH(maxpool2_backward, gy, argmax, gx, n, c, h, w);
}
double softmax_ce_forward(const double* logits, const int* labels, double* probs, int n, int k) {
  if (execution_mode() == Exec::parallel) return par::softmax_ce_forward(logits, labels, probs, n, k);
  return serial::softmax_ce_forward(logits, labels, probs, n, k);
}
void softmax_ce_backward(const double* probs, const int* labels, double* glogits, int n, int k,
                         double scale) {
  DATAUDIT_DISPATCH(softmax_ce_backward, probs, labels, glogits, n, k, scale);
}

#undef DATAUDIT_DISPATCH

}  // namespace dataudit::kernels
