#include "hvc/numerics.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>

namespace hvc {

namespace {

// FFTW's planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
    static std::mutex mutex;
    return mutex;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (data == nullptr) {
            throw std::bad_alloc();
        }
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
};

void require_finite(const ComplexField& field) {
    for (const auto& v : field) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("dft: field contains non-finite values");
        }
    }
}

ComplexField centered_transform(const ComplexField& input, int sign) {
    if (input.empty()) {
        throw std::invalid_argument("dft: empty field");
    }
    require_finite(input);

    const std::size_t w = input.width();
    const std::size_t h = input.height();
    FftwBuffer buffer(w * h);

    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_2d(static_cast<int>(h), static_cast<int>(w), buffer.data, buffer.data,
                                sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        throw std::runtime_error("dft: FFTW could not create a plan");
    }

    // Move the centered origin to index 0 (ifftshift).
    for (std::size_t r = 0; r < h; ++r) {
        const std::size_t dst_r = (r + h - h / 2) % h;
        for (std::size_t c = 0; c < w; ++c) {
            const std::size_t dst = dst_r * w + (c + w - w / 2) % w;
            buffer.data[dst][0] = input(r, c).real();
            buffer.data[dst][1] = input(r, c).imag();
        }
    }

    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    // And back to the center (fftshift), with unitary scaling.
    const double scale = 1.0 / std::sqrt(static_cast<double>(w * h));
    ComplexField out(w, h);
    for (std::size_t r = 0; r < h; ++r) {
        const std::size_t src_r = (r + h - h / 2) % h;
        for (std::size_t c = 0; c < w; ++c) {
            const std::size_t src = src_r * w + (c + w - w / 2) % w;
            out(r, c) = Complex(buffer.data[src][0] * scale, buffer.data[src][1] * scale);
        }
    }
    return out;
}

}  // namespace

ComplexField dft2_centered(const ComplexField& field) {
    return centered_transform(field, FFTW_FORWARD);
}

ComplexField idft2_centered(const ComplexField& spectrum) {
    return centered_transform(spectrum, FFTW_BACKWARD);
}

ComplexField to_complex(const RealGrid& real) {
    ComplexField out(real.width(), real.height());
    for (std::size_t i = 0; i < real.size(); ++i) {
        out.values()[i] = Complex(real.values()[i], 0.0);
    }
    return out;
}

RealGrid intensity(const ComplexField& field) {
    RealGrid out(field.width(), field.height());
    for (std::size_t i = 0; i < field.size(); ++i) {
        out.values()[i] = std::norm(field.values()[i]);
    }
    return out;
}

double energy(const ComplexField& field) {
    double total = 0.0;
    for (const auto& v : field) {
        total += std::norm(v);
    }
    return total;
}

}  // namespace hvc
