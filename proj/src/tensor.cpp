#include "mefkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mefkit {

Tensor::Tensor(int n_, int h_, int w_, int c_, float fill)
    : n(n_), h(h_), w(w_), c(c_) {
    if (n < 0 || h < 0 || w < 0 || c < 0) {
        throw std::invalid_argument("tensor shape must be non-negative, got " +
                                    mefkit::shape_str(n_, h_, w_, c_));
    }
    data.assign(static_cast<std::size_t>(n) * h * w * c, fill);
}

std::string shape_str(int n, int h, int w, int c) {
    std::ostringstream os;
    os << "(" << n << "," << h << "," << w << "," << c << ")";
    return os.str();
}

std::string Tensor::shape_str() const { return mefkit::shape_str(n, h, w, c); }

bool all_finite(const Tensor& t) {
    for (float v : t.data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void require_finite(const Tensor& t, const std::string& what) {
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        if (!std::isfinite(t.data[i])) {
            std::ostringstream os;
            os << what << " contains a non-finite value (" << t.data[i]
               << ") at flat index " << i << ", shape " << t.shape_str();
            throw std::runtime_error(os.str());
        }
    }
}

float min_value(const Tensor& t) {
    float m = std::numeric_limits<float>::infinity();
    for (float v : t.data) m = std::min(m, v);
    return m;
}

float max_value(const Tensor& t) {
    float m = -std::numeric_limits<float>::infinity();
    for (float v : t.data) m = std::max(m, v);
    return m;
}

static void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                    a.shape_str() + " vs " + b.shape_str());
    }
}

Tensor add(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    Tensor out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

Tensor subtract(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "subtract");
    Tensor out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
    return out;
}

Tensor multiply(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "multiply");
    Tensor out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= b.data[i];
    return out;
}

Tensor scale(const Tensor& a, float s) {
    Tensor out = a;
    for (float& v : out.data) v *= s;
    return out;
}

Tensor abs_values(const Tensor& a) {
    Tensor out = a;
    for (float& v : out.data) v = std::fabs(v);
    return out;
}

Tensor clamp01(const Tensor& a) {
    Tensor out = a;
    for (float& v : out.data) v = std::clamp(v, 0.0f, 1.0f);
    return out;
}

Tensor slice_channels(const Tensor& t, int c0, int count) {
    if (c0 < 0 || count < 0 || c0 + count > t.c) {
        throw std::invalid_argument("slice_channels: range [" + std::to_string(c0) +
                                    "," + std::to_string(c0 + count) +
                                    ") out of bounds for shape " + t.shape_str());
    }
    Tensor out(t.n, t.h, t.w, count);
    for (int b = 0; b < t.n; ++b)
        for (int y = 0; y < t.h; ++y)
            for (int x = 0; x < t.w; ++x) {
                const float* src = t.pixel(b, y, x) + c0;
                float* dst = out.pixel(b, y, x);
                for (int ch = 0; ch < count; ++ch) dst[ch] = src[ch];
            }
    return out;
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
    if (a.n != b.n || a.h != b.h || a.w != b.w) {
        throw std::invalid_argument("concat_channels: spatial/batch mismatch " +
                                    a.shape_str() + " vs " + b.shape_str());
    }
    Tensor out(a.n, a.h, a.w, a.c + b.c);
    for (int bt = 0; bt < a.n; ++bt)
        for (int y = 0; y < a.h; ++y)
            for (int x = 0; x < a.w; ++x) {
                float* dst = out.pixel(bt, y, x);
                const float* pa = a.pixel(bt, y, x);
                const float* pb = b.pixel(bt, y, x);
                for (int ch = 0; ch < a.c; ++ch) dst[ch] = pa[ch];
                for (int ch = 0; ch < b.c; ++ch) dst[a.c + ch] = pb[ch];
            }
    return out;
}

float max_abs_diff(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "max_abs_diff");
    float m = 0.0f;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        m = std::max(m, std::fabs(a.data[i] - b.data[i]));
    }
    return m;
}

} // namespace mefkit
