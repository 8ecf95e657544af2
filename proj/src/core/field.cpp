#include "gcm/field.hpp"

#include <algorithm>
#include <cmath>

#include "gcm/error.hpp"

namespace gcm {

template <class T>
GridField<T>::GridField(const Domain& domain, std::vector<T> data)
    : domain_(domain), data_(std::move(data)) {
    if (data_.size() != domain_.size()) {
        throw InvalidArgument("field length does not match nx*ny*nz");
    }
}

template class GridField<cplx>;
template class GridField<double>;

IndexBox PermittivityField::contrast_support() const {
    IndexBox box;
    const Domain& d = domain();
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i)
                if ((*this)(i, j, k) != 1.0) box.include(i, j, k);
    return box;
}

double PermittivityField::max_value() const {
    return *std::max_element(raw().begin(), raw().end());
}

VectorField make_vector_field(const Domain& domain, cplx fill) {
    return {ComplexField(domain, fill), ComplexField(domain, fill), ComplexField(domain, fill)};
}

ComplexField dot(const VectorField& a, const VectorField& b) {
    ComplexField out(a[0].domain());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        out[idx] = a[0][idx] * b[0][idx] + a[1][idx] * b[1][idx] + a[2][idx] * b[2][idx];
    }
    return out;
}

namespace {

template <class F>
double weighted_sum(const Domain& d, F&& value_sq) {
    double sum = 0.0;
    std::size_t idx = 0;
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i, ++idx) sum += d.trapezoid_weight(i, j, k) * value_sq(idx);
    return sum;
}

} // namespace

double l2_norm(const RealField& f) {
    return std::sqrt(weighted_sum(f.domain(), [&](std::size_t i) { return f[i] * f[i]; }));
}

double l2_norm(const ComplexField& f) {
    return std::sqrt(weighted_sum(f.domain(), [&](std::size_t i) { return std::norm(f[i]); }));
}

double relative_l2(const ComplexField& a, const ComplexField& b) {
    require_same_domain(a.domain(), b.domain(), "relative_l2");
    const double num =
        weighted_sum(a.domain(), [&](std::size_t i) { return std::norm(a[i] - b[i]); });
    const double den = weighted_sum(b.domain(), [&](std::size_t i) { return std::norm(b[i]); });
    if (den == 0.0) throw InvalidArgument("relative_l2: reference field is zero");
    return std::sqrt(num / den);
}

void require_same_domain(const Domain& a, const Domain& b, const char* what) {
    if (!(a == b)) throw InvalidArgument(std::string(what) + ": fields live on different grids");
}

} // namespace gcm
