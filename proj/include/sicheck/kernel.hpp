#pragma once

namespace sicheck {

enum class KernelId
{
  Quartic,
};

const char* kernel_name(KernelId id);

//! (15/16)(1 - u^2)^2 on [-1, 1], zero outside. Throws InvalidArgument for
//! non-finite u.
double quartic_kernel(double u);

//! Evaluates the kernel identified by `id` at u.
double kernel_eval(KernelId id, double u);

//! K((u - center) / h) / h. Requires h > 0.
double kernel_weight(double u, double center, double h,
                     KernelId id = KernelId::Quartic);

} // namespace sicheck
