#include "csit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace csit {

int max_threads() {
    if (const char* env = std::getenv("CSI_TAMPER_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
}

void parallel_chunks(int n_chunks, const std::function<void(int)>& fn) {
    const int workers = std::min(max_threads(), n_chunks);
    if (workers <= 1) {
        for (int i = 0; i < n_chunks; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto run = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_chunks || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace csit
