#pragma once

#include <cstddef>
#include <cstdint>

namespace dataudit::kernels {

// Geometry of a stride-1, zero-padded, square-kernel convolution.
// Grouped form: groups == 1 is a dense conv, groups == in_c is depthwise.
// Weight layout: [out_c][in_c/groups][ksize][ksize].
struct Conv2dDims {
  int n = 0;
  int in_c = 0, in_h = 0, in_w = 0;
  int out_c = 0;
  int ksize = 0;
  int pad = 0;
  int groups = 1;

  int out_h() const { return in_h + 2 * pad - ksize + 1; }
  int out_w() const { return in_w + 2 * pad - ksize + 1; }
  int in_c_per_group() const { return in_c / groups; }
  int out_c_per_group() const { return out_c / groups; }
};

enum class Exec { serial, parallel };

// Process-wide execution mode. Parallel kernels assign each output element to
// exactly one thread and accumulate in the same order as the serial reference,
// so both modes produce bitwise-identical results.
Exec execution_mode();
void set_execution_mode(Exec mode);

// Serial reference implementations. Kept as the ground truth the parallel
// kernels are tested against.
namespace serial {
void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const Conv2dDims& d);
void conv2d_backward_input(const double* gy, const double* w, double* gx, const Conv2dDims& d);
void conv2d_backward_params(const double* gy, const double* x, double* gw, double* gb,
                            const Conv2dDims& d);

void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int in_dim,
                   int out_dim);
void dense_backward_input(const double* gy, const double* w, double* gx, int n, int in_dim,
                          int out_dim);
void dense_backward_params(const double* gy, const double* x, double* gw, double* gb, int n,
                           int in_dim, int out_dim);

void relu_forward(const double* x, double* y, std::size_t len);
void relu_backward(const double* x, const double* gy, double* gx, std::size_t len);

void maxpool2_forward(const double* x, double* y, std::int32_t* argmax, int n, int c, int h, int w);
void maxpool2_backward(const double* gy, const std::int32_t* argmax, double* gx, int n, int c,
                       int h, int w);

// Row-wise softmax + cross-entropy. probs gets the softmax rows; returns the
// summed loss over the batch.
double softmax_ce_forward(const double* logits, const int* labels, double* probs, int n, int k);
// glogits[i][j] = (probs[i][j] - [j == labels[i]]) * scale
void softmax_ce_backward(const double* probs, const int* labels, double* glogits, int n, int k,
                         double scale);
}  // namespace serial

// OpenMP implementations; bitwise-equal to serial:: by construction.
namespace par {
void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const Conv2dDims& d);
void conv2d_backward_input(const double* gy, const double* w, double* gx, const Conv2dDims& d);
void conv2d_backward_params(const double* gy, const double* x, double* gw, double* gb,
                            const Conv2dDims& d);

void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int in_dim,
                   int out_dim);
void dense_backward_input(const double* gy, const double* w, double* gx, int n, int in_dim,
                          int out_dim);
void dense_backward_params(const double* gy, const double* x, double* gw, double* gb, int n,
                           int in_dim, int out_dim);

void relu_forward(const double* x, double* y, std::size_t len);
void relu_backward(const double* x, const double* gy, double* gx, std::size_t len);

void maxpool2_forward(const double* x, double* y, std::int32_t* argmax, int n, int c, int h, int w);
void maxpool2_backward(const double* gy, const std::int32_t* argmax, double* gx, int n, int c,
                       int h, int w);

double softmax_ce_forward(const double* logits, const int* labels, double* probs, int n, int k);
void softmax_ce_backward(const double* probs, const int* labels, double* glogits, int n, int k,
                         double scale);
}  // namespace par

// Mode-dispatching entry points used by the layer stack.
void conv2d_forward(const double* x, const double* w, const double* b, double* y,
                    const Conv2dDims& d);
void conv2d_backward_input(const double* gy, const double* w, double* gx, const Conv2dDims& d);
void conv2d_backward_params(const double* gy, const double* x, double* gw, double* gb,
                            const Conv2dDims& d);
void dense_forward(const double* x, const double* w, const double* b, double* y, int n, int in_dim,
                   int out_dim);
void dense_backward_input(const double* gy, const double* w, double* gx, int n, int in_dim,
                          int out_dim);
void dense_backward_params(const double* gy, const double* x, double* gw, double* gb, int n,
                           int in_dim, int out_dim);
void relu_forward(const double* x, double* y, std::size_t len);
void relu_backward(const double* x, const double* gy, double* gx, std::size_t len);
void maxpool2_forward(const double* x, double* y, std::int32_t* argmax, int n, int c, int h, int w);
void maxpool2_backward(const double* gy, const std::int32_t* argmax, double* gx, int n, int c,
                       int h, int w);
double softmax_ce_forward(const double* logits, const int* labels, double* probs, int n, int k);
void softmax_ce_backward(const double* probs, const int* labels, double* glogits, int n, int k,
                         double scale);

}  // namespace dataudit::kernels
