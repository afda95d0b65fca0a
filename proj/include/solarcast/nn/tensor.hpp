#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "solarcast/core/errors.hpp"

namespace solarcast::nn {

// Shaped numeric array, double precision. Gradient buffer is allocated lazily
// and, when present, always shape-matches the values.
class Tensor {
    static std::size_t element_count(const std::vector<std::size_t>& shape) {
        return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                               std::multiplies<>());
    }

public:
    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> shape)
        : values(element_count(shape), 0.0), shape_(std::move(shape)) {}

    static Tensor vector(std::size_t n) { return Tensor({n}); }
    static Tensor matrix(std::size_t rows, std::size_t cols) {
        return Tensor({rows, cols});
    }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t ndim() const { return shape_.size(); }
    std::size_t size() const { return values.size(); }

    std::size_t rows() const { return shape_.empty() ? 0 : shape_[0]; }
    std::size_t cols() const { return shape_.size() < 2 ? 1 : shape_[1]; }

    double& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    void ensure_grad() {
        if (grad.size() != values.size())
            grad.assign(values.size(), 0.0);
    }

    void zero_grad() { grad.assign(grad.size(), 0.0); }

    // Reshape without touching the buffer. Element count must match.
    void reshape(std::vector<std::size_t> shape) {
        std::size_t n = std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                                        std::multiplies<>());
        if (n != values.size())
            throw UsageError("reshape: element count mismatch");
        shape_ = std::move(shape);
    }

    std::string shape_str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < shape_.size(); ++i)
            s += (i ? "x" : "") + std::to_string(shape_[i]);
        return s + "]";
    }

    std::vector<double> values;
    std::vector<double> grad;

private:
    std::vector<std::size_t> shape_;
};

} // namespace solarcast::nn
