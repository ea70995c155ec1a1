#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "fracwave/error.hpp"

namespace fracwave::detail {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, direction, in-place) and kept
// for the lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int size, int sign, bool in_place) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(size, sign, in_place);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::vector<std::complex<double>> a(size), b(size);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = in_place ? pa : reinterpret_cast<fftw_complex*>(b.data());
    fftw_plan plan = fftw_plan_dft_1d(size, pa, pb, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw DomainError("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
             int sign) {
  if (in.size() != out.size()) throw InvalidArgument("fft: input and output lengths differ");
  if (in.empty()) return;
  const bool in_place = in.data() == out.data();
  fftw_plan plan = PlanCache::instance().get(static_cast<int>(in.size()), sign, in_place);
  // Out-of-place complex transforms leave the input untouched.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(in, out, FFTW_FORWARD);
}

void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(in, out, FFTW_BACKWARD);
}

}  // namespace fracwave::detail
