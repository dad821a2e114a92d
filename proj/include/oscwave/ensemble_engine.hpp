#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "oscwave/grid.hpp"

namespace oscwave::detail {

inline unsigned resolve_thread_count(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Shared Monte Carlo accumulator. Samples are grouped into fixed contiguous
// blocks; workers claim whole blocks and build per-block Welford moments
// (running mean and centered second moment), which are then combined strictly
// in block order. Accumulation order therefore never depends on the worker
// count or on scheduling, so results are bit-identical for any n_threads.
// Welford centering also keeps two exactness guarantees the naive
// sum/sum-of-squares form loses to rounding: identical samples yield the
// common value as the mean and a standard error of exactly zero.
//
// sample(i) must return the i-th realization as a sequence of grid.n_steps()
// complex values, fully determined by i.
template <typename SampleFn>
EnsembleStats accumulate_complex_ensemble(const TimeGrid& grid, std::size_t n_samples,
                                          unsigned n_threads, SampleFn&& sample) {
    constexpr std::size_t kBlock = 64;
    // Upper bound on simultaneously buffered block partials, to keep memory
    // flat for large ensembles.
    constexpr std::size_t kRound = 256;

    const std::size_t n_points = grid.n_steps();
    const std::size_t n_blocks = (n_samples + kBlock - 1) / kBlock;
    const unsigned workers = resolve_thread_count(n_threads);

    struct Moments {
        std::vector<double> mean_re, mean_im, m2_re, m2_im;
        std::size_t count = 0;

        void reset(std::size_t n_pts) {
            mean_re.assign(n_pts, 0.0);
            mean_im.assign(n_pts, 0.0);
            m2_re.assign(n_pts, 0.0);
            m2_im.assign(n_pts, 0.0);
            count = 0;
        }
    };

    Moments total;
    total.reset(n_points);

    std::vector<Moments> slots(std::min(n_blocks, kRound));

    std::mutex error_mutex;
    std::exception_ptr first_error;

    for (std::size_t round_start = 0; round_start < n_blocks; round_start += kRound) {
        const std::size_t round_end = std::min(n_blocks, round_start + kRound);
        std::atomic<std::size_t> next_block{round_start};

        auto run_worker = [&]() {
            for (;;) {
                const std::size_t b = next_block.fetch_add(1);
                if (b >= round_end) break;
                Moments& slot = slots[b - round_start];
                slot.reset(n_points);
                const std::size_t s_begin = b * kBlock;
                const std::size_t s_end = std::min(n_samples, s_begin + kBlock);
                try {
                    for (std::size_t s = s_begin; s < s_end; ++s) {
                        const auto values = sample(s);
                        slot.count += 1;
                        const double inv = 1.0 / static_cast<double>(slot.count);
                        for (std::size_t p = 0; p < n_points; ++p) {
                            const double re = values[p].real();
                            const double im = values[p].imag();
                            const double dre = re - slot.mean_re[p];
                            const double dim = im - slot.mean_im[p];
                            slot.mean_re[p] += dre * inv;
                            slot.mean_im[p] += dim * inv;
                            slot.m2_re[p] += dre * (re - slot.mean_re[p]);
                            slot.m2_im[p] += dim * (im - slot.mean_im[p]);
                        }
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };

        if (workers == 1) {
            run_worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_worker);
            for (auto& t : pool) t.join();
        }
        if (first_error) std::rethrow_exception(first_error);

        for (std::size_t b = round_start; b < round_end; ++b) {
            const Moments& slot = slots[b - round_start];
            if (total.count == 0) {
                total = slot;
                continue;
            }
            const double na = static_cast<double>(total.count);
            const double nb = static_cast<double>(slot.count);
            const double n_new = na + nb;
            for (std::size_t p = 0; p < n_points; ++p) {
                const double dre = slot.mean_re[p] - total.mean_re[p];
                const double dim = slot.mean_im[p] - total.mean_im[p];
                total.mean_re[p] += dre * (nb / n_new);
                total.mean_im[p] += dim * (nb / n_new);
                total.m2_re[p] += slot.m2_re[p] + dre * dre * (na * nb / n_new);
                total.m2_im[p] += slot.m2_im[p] + dim * dim * (na * nb / n_new);
            }
            total.count += slot.count;
        }
    }

    const double n = static_cast<double>(n_samples);
    std::vector<std::complex<double>> mean(n_points);
    std::vector<double> std_error(n_points, 0.0);
    for (std::size_t p = 0; p < n_points; ++p) {
        mean[p] = {total.mean_re[p], total.mean_im[p]};
        if (n_samples >= 2)
            std_error[p] = std::sqrt((total.m2_re[p] + total.m2_im[p]) / (n - 1.0) / n);
    }
    return EnsembleStats{grid, std::move(mean), std::move(std_error), n_samples};
}

}  // namespace oscwave::detail
