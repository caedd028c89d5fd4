#pragma once

#include "mefkit/tensor.hpp"

namespace mefkit {

enum class PadMode {
    Zero,    // `same` zero fill
    Reflect, // symmetric reflection (edge included), folds for any pad size
};

// Convolution parameters. Kernels are stored (kh, kw, in_ch, out_ch);
// depthwise kernels are (kh, kw, ch, 1). `same` padding keeps output
// spatial dims equal to ceil(input / stride); forward kernels require
// odd spatial dims so the padding is symmetric. Transposed convolution
// is the one even-kernel exception (see transposed_conv2d).
struct Conv2DParams {
    Tensor kernel;
    std::vector<float> bias; // empty = no bias, else length out_ch
    int stride = 1;
    bool depthwise = false;
    PadMode pad = PadMode::Zero;
};

// Dense 2D convolution over NHWC input.
Tensor conv2d(const Tensor& input, const Conv2DParams& params);

// Per-channel independent filtering; kernel (kh, kw, ch, 1).
Tensor depthwise_conv2d(const Tensor& input, const Conv2DParams& params);

// 1x1 channel mixing; kernel (1, 1, in_ch, out_ch).
Tensor pointwise_conv2d(const Tensor& input, const Conv2DParams& params);

// Stride-2 transposed convolution, output spatial dims exactly 2x input.
// Kernel (kh, kw, in_ch, out_ch) with kh,kw >= 2.
Tensor transposed_conv2d(const Tensor& input, const Conv2DParams& params);

// 2x2 window, stride 2, per-channel max. Spatial dims must be even.
Tensor maxpool2(const Tensor& input);

// Per-pixel normalization over the channel axis (ConvNeXt convention).
Tensor layer_norm(const Tensor& input, const std::vector<float>& gamma,
                  const std::vector<float>& beta, float eps = 1e-6f);

// Elementwise activations. gelu uses the tanh approximation
// 0.5*x*(1 + tanh(sqrt(2/pi)*(x + 0.044715*x^3))).
float gelu(float x);
float relu(float x);
float sigmoid(float x);
Tensor gelu(const Tensor& t);
Tensor relu(const Tensor& t);
Tensor sigmoid(const Tensor& t);

// Half-pixel-centered bilinear resize (align-corners off).
Tensor resize_bilinear(const Tensor& input, int out_h, int out_w);

// Reflect-pads (symmetric, edge included) so h and w become multiples of
// `multiple`. Padding is split evenly, extra row/col at the bottom/right.
Tensor pad_reflect_to_multiple(const Tensor& input, int multiple);

// Crop a spatial window; used to undo pad_reflect_to_multiple.
Tensor crop(const Tensor& input, int y0, int x0, int out_h, int out_w);

} // namespace mefkit
