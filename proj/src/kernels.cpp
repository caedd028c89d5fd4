#include "mefkit/kernels.hpp"

#include "mefkit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mefkit {

namespace {

// Fold an index into [0, n) by symmetric reflection with period 2n,
// e.g. n=3: ... 1 0 | 0 1 2 | 2 1 0 ... Valid for any distance.
int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    int j = i % period;
    if (j < 0) j += period;
    return j < n ? j : period - 1 - j;
}

void check_conv_input(const Tensor& input, const Conv2DParams& p, bool depthwise,
                      const char* op) {
    const Tensor& k = p.kernel;
    if (input.n <= 0 || input.c <= 0) {
        throw std::invalid_argument(std::string(op) + ": empty input " + input.shape_str());
    }
    if (p.stride < 1) {
        throw std::invalid_argument(std::string(op) + ": stride must be >= 1");
    }
    if (k.n % 2 == 0 || k.h % 2 == 0) {
        throw std::invalid_argument(std::string(op) + ": kernel spatial dims must be odd, got " +
                                    k.shape_str());
    }
    if (depthwise) {
        if (k.c != 1) {
            throw std::invalid_argument(std::string(op) +
                                        ": depthwise kernel must be (kh,kw,ch,1), got " +
                                        k.shape_str());
        }
        if (k.w != input.c) {
            throw std::invalid_argument(std::string(op) + ": kernel channels " +
                                        std::to_string(k.w) + " do not match input " +
                                        input.shape_str());
        }
    } else if (k.w != input.c) {
        throw std::invalid_argument(std::string(op) + ": kernel in_ch " + std::to_string(k.w) +
                                    " does not match input channels, kernel " + k.shape_str() +
                                    " vs input " + input.shape_str());
    }
    const int out_ch = depthwise ? input.c : k.c;
    if (!p.bias.empty() && static_cast<int>(p.bias.size()) != out_ch) {
        throw std::invalid_argument(std::string(op) + ": bias length " +
                                    std::to_string(p.bias.size()) + " != out channels " +
                                    std::to_string(out_ch));
    }
}

inline int out_dim_same(int in, int stride) { return (in + stride - 1) / stride; }

} // namespace

Tensor conv2d(const Tensor& input, const Conv2DParams& p) {
    check_conv_input(input, p, false, "conv2d");
    const Tensor& k = p.kernel;
    const int kh = k.n, kw = k.h, cin = k.w, cout = k.c;
    const int ph = (kh - 1) / 2, pw = (kw - 1) / 2;
    const int oh = out_dim_same(input.h, p.stride);
    const int ow = out_dim_same(input.w, p.stride);

    Tensor out(input.n, oh, ow, cout);
    for (int b = 0; b < input.n; ++b) {
        parallel_for(0, oh, [&](int oy) {
            for (int ox = 0; ox < ow; ++ox) {
                float* dst = out.pixel(b, oy, ox);
                for (int oc = 0; oc < cout; ++oc) {
                    dst[oc] = p.bias.empty() ? 0.0f : p.bias[oc];
                }
                for (int ky = 0; ky < kh; ++ky) {
                    int iy = oy * p.stride + ky - ph;
                    if (p.pad == PadMode::Reflect) {
                        iy = reflect_index(iy, input.h);
                    } else if (iy < 0 || iy >= input.h) {
                        continue;
                    }
                    for (int kx = 0; kx < kw; ++kx) {
                        int ix = ox * p.stride + kx - pw;
                        if (p.pad == PadMode::Reflect) {
                            ix = reflect_index(ix, input.w);
                        } else if (ix < 0 || ix >= input.w) {
                            continue;
                        }
                        const float* src = input.pixel(b, iy, ix);
                        const float* kv = k.pixel(ky, kx, 0); // (kh,kw,cin,cout) layout
                        for (int ic = 0; ic < cin; ++ic) {
                            const float sv = src[ic];
                            const float* kc = kv + static_cast<std::size_t>(ic) * cout;
                            for (int oc = 0; oc < cout; ++oc) {
                                dst[oc] += sv * kc[oc];
                            }
                        }
                    }
                }
            }
        });
    }
    return out;
}

Tensor depthwise_conv2d(const Tensor& input, const Conv2DParams& p) {
    check_conv_input(input, p, true, "depthwise_conv2d");
    const Tensor& k = p.kernel;
    const int kh = k.n, kw = k.h, ch = input.c;
    const int ph = (kh - 1) / 2, pw = (kw - 1) / 2;
    const int oh = out_dim_same(input.h, p.stride);
    const int ow = out_dim_same(input.w, p.stride);

    Tensor out(input.n, oh, ow, ch);
    for (int b = 0; b < input.n; ++b) {
        parallel_for(0, oh, [&](int oy) {
            for (int ox = 0; ox < ow; ++ox) {
                float* dst = out.pixel(b, oy, ox);
                for (int c = 0; c < ch; ++c) {
                    dst[c] = p.bias.empty() ? 0.0f : p.bias[c];
                }
                for (int ky = 0; ky < kh; ++ky) {
                    int iy = oy * p.stride + ky - ph;
                    if (p.pad == PadMode::Reflect) {
                        iy = reflect_index(iy, input.h);
                    } else if (iy < 0 || iy >= input.h) {
                        continue;
                    }
                    for (int kx = 0; kx < kw; ++kx) {
                        int ix = ox * p.stride + kx - pw;
                        if (p.pad == PadMode::Reflect) {
                            ix = reflect_index(ix, input.w);
                        } else if (ix < 0 || ix >= input.w) {
                            continue;
                        }
                        const float* src = input.pixel(b, iy, ix);
                        const float* kv = k.pixel(ky, kx, 0);
                        for (int c = 0; c < ch; ++c) {
                            dst[c] += src[c] * kv[c];
                        }
                    }
                }
            }
        });
    }
    return out;
}

Tensor pointwise_conv2d(const Tensor& input, const Conv2DParams& p) {
    if (p.kernel.n != 1 || p.kernel.h != 1) {
        throw std::invalid_argument("pointwise_conv2d: kernel must be 1x1, got " +
                                    p.kernel.shape_str());
    }
    check_conv_input(input, p, false, "pointwise_conv2d");
    const int cin = p.kernel.w, cout = p.kernel.c;
    const Tensor& k = p.kernel;
    Tensor out(input.n, input.h, input.w, cout);
    for (int b = 0; b < input.n; ++b) {
        parallel_for(0, input.h, [&](int y) {
            for (int x = 0; x < input.w; ++x) {
                const float* src = input.pixel(b, y, x);
                float* dst = out.pixel(b, y, x);
                for (int oc = 0; oc < cout; ++oc) {
                    dst[oc] = p.bias.empty() ? 0.0f : p.bias[oc];
                }
                const float* kv = k.data.data();
                for (int ic = 0; ic < cin; ++ic) {
                    const float sv = src[ic];
                    const float* kc = kv + static_cast<std::size_t>(ic) * cout;
                    for (int oc = 0; oc < cout; ++oc) {
                        dst[oc] += sv * kc[oc];
                    }
                }
            }
        });
    }
    return out;
}

Tensor transposed_conv2d(const Tensor& input, const Conv2DParams& p) {
    const Tensor& k = p.kernel;
    if (p.stride != 2) {
        throw std::invalid_argument("transposed_conv2d: only stride 2 is supported");
    }
    if (k.w != input.c) {
        throw std::invalid_argument("transposed_conv2d: kernel in_ch " + std::to_string(k.w) +
                                    " does not match input " + input.shape_str());
    }
    if (k.n < 2 || k.h < 2) {
        throw std::invalid_argument("transposed_conv2d: kernel spatial dims must be >= stride, got " +
                                    k.shape_str());
    }
    const int kh = k.n, kw = k.h, cin = k.w, cout = k.c;
    if (!p.bias.empty() && static_cast<int>(p.bias.size()) != cout) {
        throw std::invalid_argument("transposed_conv2d: bias length mismatch");
    }
    const int oh = input.h * 2, ow = input.w * 2;
    // `same` output = in*stride; total pad = kh - stride, front half rounded down.
    const int pad_top = (kh - 2) / 2;
    const int pad_left = (kw - 2) / 2;

    Tensor out(input.n, oh, ow, cout);
    for (int b = 0; b < input.n; ++b) {
        parallel_for(0, oh, [&](int oy) {
            for (int ox = 0; ox < ow; ++ox) {
                float* dst = out.pixel(b, oy, ox);
                for (int oc = 0; oc < cout; ++oc) {
                    dst[oc] = p.bias.empty() ? 0.0f : p.bias[oc];
                }
                // gather: out[oy,ox] += in[iy,ix] * k[ky,kx] where
                // oy = iy*2 + ky - pad_top, ox = ix*2 + kx - pad_left
                for (int ky = 0; ky < kh; ++ky) {
                    const int ty = oy + pad_top - ky;
                    if (ty < 0 || ty % 2 != 0) continue;
                    const int iy = ty / 2;
                    if (iy >= input.h) continue;
                    for (int kx = 0; kx < kw; ++kx) {
                        const int tx = ox + pad_left - kx;
                        if (tx < 0 || tx % 2 != 0) continue;
                        const int ix = tx / 2;
                        if (ix >= input.w) continue;
                        const float* src = input.pixel(b, iy, ix);
                        const float* kv = k.pixel(ky, kx, 0);
                        for (int ic = 0; ic < cin; ++ic) {
                            const float sv = src[ic];
                            const float* kc = kv + static_cast<std::size_t>(ic) * cout;
                            for (int oc = 0; oc < cout; ++oc) {
                                dst[oc] += sv * kc[oc];
                            }
                        }
                    }
                }
            }
        });
    }
    return out;
}

Tensor maxpool2(const Tensor& input) {
    if (input.h % 2 != 0 || input.w % 2 != 0) {
        throw std::invalid_argument("maxpool2: spatial dims must be even, got " +
                                    input.shape_str());
    }
    Tensor out(input.n, input.h / 2, input.w / 2, input.c);
    for (int b = 0; b < input.n; ++b) {
        parallel_for(0, out.h, [&](int oy) {
            for (int ox = 0; ox < out.w; ++ox) {
                const float* p00 = input.pixel(b, 2 * oy, 2 * ox);
                const float* p01 = input.pixel(b, 2 * oy, 2 * ox + 1);
                const float* p10 = input.pixel(b, 2 * oy + 1, 2 * ox);
                const float* p11 = input.pixel(b, 2 * oy + 1, 2 * ox + 1);
                float* dst = out.pixel(b, oy, ox);
                for (int c = 0; c < input.c; ++c) {
                    dst[c] = std::max(std::max(p00[c], p01[c]), std::max(p10[c], p11[c]));
                }
            }
        });
    }
    return out;
}

Tensor layer_norm(const Tensor& input, const std::vector<float>& gamma,
                  const std::vector<float>& beta, float eps) {
    if (static_cast<int>(gamma.size()) != input.c || static_cast<int>(beta.size()) != input.c) {
        throw std::invalid_argument("layer_norm: gamma/beta length (" +
                                    std::to_string(gamma.size()) + "," +
                                    std::to_string(beta.size()) + ") != channels of " +
                                    input.shape_str());
    }
    Tensor out(input.n, input.h, input.w, input.c);
    const int ch = input.c;
    for (int b = 0; b < input.n; ++b) {
        parallel_for(0, input.h, [&](int y) {
            for (int x = 0; x < input.w; ++x) {
                const float* src = input.pixel(b, y, x);
                float* dst = out.pixel(b, y, x);
                double mean = 0.0;
                for (int c = 0; c < ch; ++c) mean += src[c];
                mean /= ch;
                double var = 0.0;
                for (int c = 0; c < ch; ++c) {
                    const double d = src[c] - mean;
                    var += d * d;
                }
                var /= ch;
                const float inv = static_cast<float>(1.0 / std::sqrt(var + eps));
                for (int c = 0; c < ch; ++c) {
                    dst[c] = (src[c] - static_cast<float>(mean)) * inv * gamma[c] + beta[c];
                }
            }
        });
    }
    return out;
}

float gelu(float x) {
    const float kSqrt2OverPi = 0.7978845608028654f;
    const float t = kSqrt2OverPi * (x + 0.044715f * x * x * x);
    return 0.5f * x * (1.0f + std::tanh(t));
}

float relu(float x) { return x > 0.0f ? x : 0.0f; }

float sigmoid(float x) { return 1.0f / (1.0f + std::exp(-x)); }

Tensor gelu(const Tensor& t) {
    Tensor out = t;
    for (float& v : out.data) v = gelu(v);
    return out;
}

Tensor relu(const Tensor& t) {
    Tensor out = t;
    for (float& v : out.data) v = relu(v);
    return out;
}

Tensor sigmoid(const Tensor& t) {
    Tensor out = t;
    for (float& v : out.data) v = sigmoid(v);
    return out;
}

Tensor resize_bilinear(const Tensor& input, int out_h, int out_w) {
    if (out_h < 1 || out_w < 1) {
        throw std::invalid_argument("resize_bilinear: output dims must be >= 1");
    }
    if (input.h == out_h && input.w == out_w) return input;
    Tensor out(input.n, out_h, out_w, input.c);
    const float sy = static_cast<float>(input.h) / out_h;
    const float sx = static_cast<float>(input.w) / out_w;
    const int ch = input.c;
    for (int b = 0; b < input.n; ++b) {
        parallel_for(0, out_h, [&](int oy) {
            float fy = (oy + 0.5f) * sy - 0.5f;
            fy = std::clamp(fy, 0.0f, static_cast<float>(input.h - 1));
            const int y0 = static_cast<int>(fy);
            const int y1 = std::min(y0 + 1, input.h - 1);
            const float wy = fy - y0;
            for (int ox = 0; ox < out_w; ++ox) {
                float fx = (ox + 0.5f) * sx - 0.5f;
                fx = std::clamp(fx, 0.0f, static_cast<float>(input.w - 1));
                const int x0 = static_cast<int>(fx);
                const int x1 = std::min(x0 + 1, input.w - 1);
                const float wx = fx - x0;
                const float* p00 = input.pixel(b, y0, x0);
                const float* p01 = input.pixel(b, y0, x1);
                const float* p10 = input.pixel(b, y1, x0);
                const float* p11 = input.pixel(b, y1, x1);
                float* dst = out.pixel(b, oy, ox);
                for (int c = 0; c < ch; ++c) {
                    const float top = p00[c] + (p01[c] - p00[c]) * wx;
                    const float bot = p10[c] + (p11[c] - p10[c]) * wx;
                    dst[c] = top + (bot - top) * wy;
                }
            }
        });
    }
    return out;
}

Tensor pad_reflect_to_multiple(const Tensor& input, int multiple) {
    if (multiple < 1) {
        throw std::invalid_argument("pad_reflect_to_multiple: multiple must be >= 1");
    }
    const int th = (input.h + multiple - 1) / multiple * multiple;
    const int tw = (input.w + multiple - 1) / multiple * multiple;
    if (th == input.h && tw == input.w) return input;
    const int top = (th - input.h) / 2;
    const int left = (tw - input.w) / 2;
    Tensor out(input.n, th, tw, input.c);
    for (int b = 0; b < input.n; ++b) {
        for (int y = 0; y < th; ++y) {
            const int iy = reflect_index(y - top, input.h);
            for (int x = 0; x < tw; ++x) {
                const int ix = reflect_index(x - left, input.w);
                const float* src = input.pixel(b, iy, ix);
                float* dst = out.pixel(b, y, x);
                for (int c = 0; c < input.c; ++c) dst[c] = src[c];
            }
        }
    }
    return out;
}

Tensor crop(const Tensor& input, int y0, int x0, int out_h, int out_w) {
    if (y0 < 0 || x0 < 0 || y0 + out_h > input.h || x0 + out_w > input.w) {
        throw std::invalid_argument("crop: window out of bounds for " + input.shape_str());
    }
    Tensor out(input.n, out_h, out_w, input.c);
    for (int b = 0; b < input.n; ++b)
        for (int y = 0; y < out_h; ++y)
            for (int x = 0; x < out_w; ++x) {
                const float* src = input.pixel(b, y0 + y, x0 + x);
                float* dst = out.pixel(b, y, x);
                for (int c = 0; c < input.c; ++c) dst[c] = src[c];
            }
    return out;
}

} // namespace mefkit
