#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mefkit {

// Rank-4 float tensor in batch-height-width-channel order, row-major.
// The single carrier type for images, frame stacks, feature maps and
// weight maps throughout the library.
struct Tensor {
    int n = 0;
    int h = 0;
    int w = 0;
    int c = 0;
    std::vector<float> data;

    Tensor() = default;
    Tensor(int n_, int h_, int w_, int c_, float fill = 0.0f);

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }

    std::size_t index(int b, int y, int x, int ch) const {
        return ((static_cast<std::size_t>(b) * h + y) * w + x) * c + ch;
    }
    float& at(int b, int y, int x, int ch) { return data[index(b, y, x, ch)]; }
    float at(int b, int y, int x, int ch) const { return data[index(b, y, x, ch)]; }

    // Pointer to the channel vector of one pixel.
    float* pixel(int b, int y, int x) { return data.data() + index(b, y, x, 0); }
    const float* pixel(int b, int y, int x) const { return data.data() + index(b, y, x, 0); }

    bool same_shape(const Tensor& o) const {
        return n == o.n && h == o.h && w == o.w && c == o.c;
    }
    std::string shape_str() const;
};

// "(n,h,w,c)" for error messages.
std::string shape_str(int n, int h, int w, int c);

// Throws std::runtime_error naming the first offending value if any
// element is NaN or infinite. `what` names the tensor in the message.
void require_finite(const Tensor& t, const std::string& what);

bool all_finite(const Tensor& t);

float min_value(const Tensor& t);
float max_value(const Tensor& t);

// Elementwise helpers used all over the fusion code.
Tensor add(const Tensor& a, const Tensor& b);
Tensor subtract(const Tensor& a, const Tensor& b);
Tensor multiply(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, float s);
Tensor abs_values(const Tensor& a);
Tensor clamp01(const Tensor& a);

// Channel slice [c0, c0+count) as a new tensor.
Tensor slice_channels(const Tensor& t, int c0, int count);

// Concatenate along the channel axis. Shapes must agree otherwise.
Tensor concat_channels(const Tensor& a, const Tensor& b);

float max_abs_diff(const Tensor& a, const Tensor& b);

} // namespace mefkit
