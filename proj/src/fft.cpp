#include "tslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace tslab::fft {
namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign, int rows = 1) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(n, sign, rows);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        // Planning with FFTW_ESTIMATE does not touch the buffers.
        std::vector<cplx> scratch(static_cast<std::size_t>(n) * static_cast<std::size_t>(rows));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_many_dft(1, &n, rows, buf, nullptr, 1, n, buf, nullptr, 1, n,
                                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void transform(std::span<cplx> data, int sign) {
    if (data.size() <= 1) return;
    fftw_plan plan = cache().get(static_cast<int>(data.size()), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

void transform_rows(std::span<cplx> data, int size, int sign) {
    if (size <= 1 || data.empty()) return;
    const int rows = static_cast<int>(data.size() / static_cast<std::size_t>(size));
    fftw_plan plan = cache().get(size, sign, rows);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace tslab::fft
