#include "s2flow/kernels/kernels.hpp"

#include "site_ops.hpp"

namespace s2flow::kernels {
namespace detail {

void cay_apply_field_scalar(ConstView3 f, ConstView3 m, View3 out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) cay_site(f, m, out, i);
}

void exp_apply_field_scalar(ConstView3 f, ConstView3 m, View3 out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) exp_site(f, m, out, i);
}

void project_orthogonal_scalar(ConstView3 a, ConstView3 m, View3 out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) project_site(a, m, out, i);
}

void isotropy_shift_scalar(ConstView3 a, const double* sigma, ConstView3 m, View3 out,
                           std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) shift_site(a, sigma[i], m, out, i);
}

void isotropy_shift_const_scalar(ConstView3 a, double sigma, ConstView3 m, View3 out,
                                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) shift_site(a, sigma, m, out, i);
}

void dcay_inv_field_scalar(ConstView3 f, ConstView3 v, View3 out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dcay_inv_site(f, v, out, i);
}

void chain_field_scalar(ConstView3 m, const ChainFieldCoeffs& c, View3 out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) chain_field_site(m, c, out, i, n);
}

void llg_generator_scalar(ConstView3 m, ConstView3 h, double lambda, bool precession,
                          View3 out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) llg_generator_site(m, h, lambda, precession, out, i);
}

}  // namespace detail
}  // namespace s2flow::kernels
