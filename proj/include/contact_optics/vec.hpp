#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace contact_optics {

/// Fixed-capacity real vector (up to three components) with a runtime length.
/// Chart coordinates, tangent vectors and covectors all use this type; the
/// length always equals the dimension of the owning chart.
class Vec {
public:
    static constexpr std::size_t kCapacity = 3;

    constexpr Vec() = default;
    explicit constexpr Vec(std::size_t size) : size_(size) {
        if (size > kCapacity) throw std::length_error("Vec: size exceeds capacity 3");
    }
    constexpr Vec(std::initializer_list<double> values) : size_(values.size()) {
        if (values.size() > kCapacity) throw std::length_error("Vec: size exceeds capacity 3");
        std::size_t i = 0;
        for (double v : values) data_[i++] = v;
    }

    [[nodiscard]] constexpr std::size_t size() const { return size_; }
    constexpr double& operator[](std::size_t i) { return data_[i]; }
    constexpr double operator[](std::size_t i) const { return data_[i]; }
    [[nodiscard]] constexpr const double* begin() const { return data_.data(); }
    [[nodiscard]] constexpr const double* end() const { return data_.data() + size_; }
    constexpr double* begin() { return data_.data(); }
    constexpr double* end() { return data_.data() + size_; }

    constexpr Vec& operator+=(const Vec& o) {
        check_same(o);
        for (std::size_t i = 0; i < size_; ++i) data_[i] += o.data_[i];
        return *this;
    }
    constexpr Vec& operator-=(const Vec& o) {
        check_same(o);
        for (std::size_t i = 0; i < size_; ++i) data_[i] -= o.data_[i];
        return *this;
    }
    constexpr Vec& operator*=(double s) {
        for (std::size_t i = 0; i < size_; ++i) data_[i] *= s;
        return *this;
    }
    constexpr Vec& operator/=(double s) {
        for (std::size_t i = 0; i < size_; ++i) data_[i] /= s;
        return *this;
    }

    friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
    friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
    friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
    friend constexpr Vec operator/(Vec a, double s) { return a /= s; }

    friend constexpr bool operator==(const Vec& a, const Vec& b) {
        if (a.size_ != b.size_) return false;
        for (std::size_t i = 0; i < a.size_; ++i)
            if (a.data_[i] != b.data_[i]) return false;
        return true;
    }

private:
    constexpr void check_same(const Vec& o) const {
        if (o.size_ != size_) throw std::invalid_argument("Vec: dimension mismatch");
    }

    std::array<double, kCapacity> data_{};
    std::size_t size_ = 0;
};

/// Plain Euclidean dot product of chart components.
inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

/// Symmetric matrix of the same capacity as Vec.
struct Mat {
    std::array<std::array<double, Vec::kCapacity>, Vec::kCapacity> m{};
    std::size_t size = 0;

    double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
    double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
};

}  // namespace contact_optics
