#include "toeplitz_spectra/fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace toeplitz {

namespace {

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex planner_mutex;

ComplexVector transform(const ComplexVector& x, int sign)
{
    ComplexVector out(x.size());
    if (x.empty())
        return out;
    ComplexVector in = x;
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(x.size()), pin, pout, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace

ComplexVector fft_forward(const ComplexVector& x) { return transform(x, FFTW_FORWARD); }

ComplexVector fft_backward(const ComplexVector& x) { return transform(x, FFTW_BACKWARD); }

} // namespace toeplitz
