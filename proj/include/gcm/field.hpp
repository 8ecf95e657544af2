#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "gcm/domain.hpp"

namespace gcm {

using cplx = std::complex<double>;

/// Scalar samples on every node of a Domain lattice, x-fastest.
template <class T>
class GridField {
public:
    using value_type = T;

    GridField() = default;
    explicit GridField(const Domain& domain, T fill = T{})
        : domain_(domain), data_(domain.size(), fill) {}
    GridField(const Domain& domain, std::vector<T> data);

    const Domain& domain() const { return domain_; }
    std::size_t size() const { return data_.size(); }

    T& operator[](std::size_t idx) { return data_[idx]; }
    const T& operator[](std::size_t idx) const { return data_[idx]; }
    T& operator()(int i, int j, int k) { return data_[domain_.index(i, j, k)]; }
    const T& operator()(int i, int j, int k) const { return data_[domain_.index(i, j, k)]; }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }
    std::vector<T>& raw() { return data_; }
    const std::vector<T>& raw() const { return data_; }

private:
    Domain domain_{};
    std::vector<T> data_;
};

/// Complex volume field: total field u, log-derivative q, gradient components.
using ComplexField = GridField<cplx>;

/// Real scalar field; used for the relative permittivity.
using RealField = GridField<double>;

/// Relative permittivity on the lattice. Values are >= 1 once clamped.
class PermittivityField : public RealField {
public:
    PermittivityField() = default;
    explicit PermittivityField(const Domain& domain, double fill = 1.0)
        : RealField(domain, fill) {}
    PermittivityField(const Domain& domain, std::vector<double> data)
        : RealField(domain, std::move(data)) {}

    /// Index box of nodes with eps != 1; empty when the medium is homogeneous.
    IndexBox contrast_support() const;
    double max_value() const;
};

/// Complex 3-vector field stored component-wise.
using VectorField = std::array<ComplexField, 3>;

VectorField make_vector_field(const Domain& domain, cplx fill = {});

/// Pointwise complex dot product a . b (no conjugation).
ComplexField dot(const VectorField& a, const VectorField& b);

/// Discrete L2(Omega) norm with trapezoid weights.
double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);

/// ||a - b|| / ||b|| in the trapezoid-weighted discrete L2 norm.
double relative_l2(const ComplexField& a, const ComplexField& b);

/// Throws InvalidArgument when two fields live on different lattices.
void require_same_domain(const Domain& a, const Domain& b, const char* what);

} // namespace gcm
