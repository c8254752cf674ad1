#include "sicheck/kernel.hpp"

#include "sicheck/errors.hpp"

#include <cmath>

namespace sicheck {

const char* kernel_name(KernelId id)
{
  switch (id) {
    case KernelId::Quartic:
      return "quartic";
  }
  return "unknown";
}

double quartic_kernel(double u)
{
  if (!std::isfinite(u)) {
    throw InvalidArgument("quartic_kernel: non-finite argument");
  }
  if (std::abs(u) >= 1.0) {
    return 0.0;
  }
  const double v = 1.0 - u * u;
  return 0.9375 * v * v;
}

double kernel_eval(KernelId id, double u)
{
  switch (id) {
    case KernelId::Quartic:
      return quartic_kernel(u);
  }
  throw InvalidArgument("kernel_eval: unknown kernel");
}

double kernel_weight(double u, double center, double h, KernelId id)
{
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidArgument("kernel_weight: bandwidth must be positive and finite");
  }
  return kernel_eval(id, (u - center) / h) / h;
}

} // namespace sicheck
