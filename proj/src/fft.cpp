#include "fracwave/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fracwave::fft {

namespace {

std::atomic<std::uint64_t> g_transforms{0};

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwBuffer {
  T* ptr;
  explicit FftwBuffer(std::size_t n) : ptr(static_cast<T*>(fftw_malloc(sizeof(T) * (n ? n : 1)))) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

bool aligned(const void* p) { return fftw_alignment_of(static_cast<double*>(const_cast<void*>(p))) == 0; }

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

void destroy(fftw_plan p) {
  if (!p) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(p);
}

}  // namespace

std::uint64_t transform_count() noexcept { return g_transforms.load(std::memory_order_relaxed); }
void reset_transform_count() noexcept { g_transforms.store(0, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// Plan1D

struct Plan1D::Impl {
  fftw_plan fwd_aligned = nullptr, inv_aligned = nullptr;
  fftw_plan fwd_unaligned = nullptr, inv_unaligned = nullptr;
  ~Impl() {
    destroy(fwd_aligned);
    destroy(inv_aligned);
    destroy(fwd_unaligned);
    destroy(inv_unaligned);
  }
};

Plan1D::Plan1D(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw std::invalid_argument("Plan1D: length must be positive");
  FftwBuffer<fftw_complex> buf(n);
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  impl_->fwd_aligned = fftw_plan_dft_1d(len, buf.ptr, buf.ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->inv_aligned = fftw_plan_dft_1d(len, buf.ptr, buf.ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
  impl_->fwd_unaligned =
      fftw_plan_dft_1d(len, buf.ptr, buf.ptr, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  impl_->inv_unaligned =
      fftw_plan_dft_1d(len, buf.ptr, buf.ptr, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Plan1D::~Plan1D() = default;

void Plan1D::forward(std::span<cplx> data) const {
  if (data.size() != n_) throw std::invalid_argument("Plan1D::forward: length mismatch");
  fftw_plan p = aligned(data.data()) ? impl_->fwd_aligned : impl_->fwd_unaligned;
  fftw_execute_dft(p, as_fftw(data.data()), as_fftw(data.data()));
  g_transforms.fetch_add(1, std::memory_order_relaxed);
}

void Plan1D::inverse(std::span<cplx> data) const {
  if (data.size() != n_) throw std::invalid_argument("Plan1D::inverse: length mismatch");
  fftw_plan p = aligned(data.data()) ? impl_->inv_aligned : impl_->inv_unaligned;
  fftw_execute_dft(p, as_fftw(data.data()), as_fftw(data.data()));
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& z : data) z *= scale;
  g_transforms.fetch_add(1, std::memory_order_relaxed);
}

void Plan1D::backward(std::span<cplx> data) const {
  if (data.size() != n_) throw std::invalid_argument("Plan1D::backward: length mismatch");
  fftw_plan p = aligned(data.data()) ? impl_->inv_aligned : impl_->inv_unaligned;
  fftw_execute_dft(p, as_fftw(data.data()), as_fftw(data.data()));
  g_transforms.fetch_add(1, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// RealPlan2D

struct RealPlan2D::Impl {
  fftw_plan fwd_aligned = nullptr, inv_aligned = nullptr;
  fftw_plan fwd_unaligned = nullptr, inv_unaligned = nullptr;
  ~Impl() {
    destroy(fwd_aligned);
    destroy(inv_aligned);
    destroy(fwd_unaligned);
    destroy(inv_unaligned);
  }
};

RealPlan2D::RealPlan2D(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), impl_(std::make_unique<Impl>()) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("RealPlan2D: empty shape");
  FftwBuffer<double> real(rows * cols);
  FftwBuffer<fftw_complex> spec(spectrum_size());
  const int r = static_cast<int>(rows), c = static_cast<int>(cols);
  std::lock_guard lock(planner_mutex());
  impl_->fwd_aligned = fftw_plan_dft_r2c_2d(r, c, real.ptr, spec.ptr, FFTW_ESTIMATE);
  impl_->inv_aligned = fftw_plan_dft_c2r_2d(r, c, spec.ptr, real.ptr, FFTW_ESTIMATE);
  impl_->fwd_unaligned =
      fftw_plan_dft_r2c_2d(r, c, real.ptr, spec.ptr, FFTW_ESTIMATE | FFTW_UNALIGNED);
  impl_->inv_unaligned =
      fftw_plan_dft_c2r_2d(r, c, spec.ptr, real.ptr, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

RealPlan2D::~RealPlan2D() = default;

void RealPlan2D::forward(std::span<const double> real, std::span<cplx> spectrum) const {
  if (real.size() != rows_ * cols_ || spectrum.size() != spectrum_size())
    throw std::invalid_argument("RealPlan2D::forward: shape mismatch");
  auto* in = const_cast<double*>(real.data());
  const bool al = aligned(in) && aligned(spectrum.data());
  fftw_execute_dft_r2c(al ? impl_->fwd_aligned : impl_->fwd_unaligned, in, as_fftw(spectrum.data()));
}

void RealPlan2D::inverse(std::span<cplx> spectrum, std::span<double> real) const {
  if (real.size() != rows_ * cols_ || spectrum.size() != spectrum_size())
    throw std::invalid_argument("RealPlan2D::inverse: shape mismatch");
  const bool al = aligned(real.data()) && aligned(spectrum.data());
  fftw_execute_dft_c2r(al ? impl_->inv_aligned : impl_->inv_unaligned, as_fftw(spectrum.data()),
                       real.data());
  const double scale = 1.0 / static_cast<double>(rows_ * cols_);
  for (auto& x : real) x *= scale;
}

// ---------------------------------------------------------------------------
// SinePlan

struct SinePlan::Impl {
  fftw_plan aligned_plan = nullptr, unaligned_plan = nullptr;
  double scale = 1.0;
  ~Impl() {
    destroy(aligned_plan);
    destroy(unaligned_plan);
  }
};

SinePlan::SinePlan(std::size_t n, bool two_dimensional)
    : n_(n), two_d_(two_dimensional), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw std::invalid_argument("SinePlan: length must be positive");
  const std::size_t total = two_d_ ? n * n : n;
  FftwBuffer<double> buf(total);
  const int len = static_cast<int>(n);
  const double one_axis = 1.0 / std::sqrt(2.0 * static_cast<double>(n + 1));
  impl_->scale = two_d_ ? one_axis * one_axis : one_axis;
  std::lock_guard lock(planner_mutex());
  if (two_d_) {
    impl_->aligned_plan =
        fftw_plan_r2r_2d(len, len, buf.ptr, buf.ptr, FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
    impl_->unaligned_plan = fftw_plan_r2r_2d(len, len, buf.ptr, buf.ptr, FFTW_RODFT00, FFTW_RODFT00,
                                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  } else {
    impl_->aligned_plan = fftw_plan_r2r_1d(len, buf.ptr, buf.ptr, FFTW_RODFT00, FFTW_ESTIMATE);
    impl_->unaligned_plan =
        fftw_plan_r2r_1d(len, buf.ptr, buf.ptr, FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
}

SinePlan::~SinePlan() = default;

void SinePlan::apply(std::span<double> data) const {
  if (data.size() != (two_d_ ? n_ * n_ : n_))
    throw std::invalid_argument("SinePlan::apply: length mismatch");
  fftw_plan p = aligned(data.data()) ? impl_->aligned_plan : impl_->unaligned_plan;
  fftw_execute_r2r(p, data.data(), data.data());
  for (auto& x : data) x *= impl_->scale;
}

// ---------------------------------------------------------------------------

void cosine_transform_2d(std::span<double> data, std::size_t n) {
  if (n < 2 || data.size() != n * n)
    throw std::invalid_argument("cosine_transform_2d: need an n x n array with n >= 2");
  const int len = static_cast<int>(n);
  fftw_plan p;
  {
    std::lock_guard lock(planner_mutex());
    p = fftw_plan_r2r_2d(len, len, data.data(), data.data(), FFTW_REDFT00, FFTW_REDFT00,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute_r2r(p, data.data(), data.data());
  destroy(p);
}

std::vector<cplx> fft(std::span<const cplx> v) {
  std::vector<cplx> out(v.begin(), v.end());
  Plan1D(out.size()).forward(out);
  return out;
}

std::vector<cplx> ifft(std::span<const cplx> v) {
  std::vector<cplx> out(v.begin(), v.end());
  Plan1D(out.size()).inverse(out);
  return out;
}

std::size_t next_smooth_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace fracwave::fft
