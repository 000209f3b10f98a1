#pragma once

#include <exception>
#include <mutex>

namespace mmq::detail {

// Exceptions must not escape an OpenMP region; capture the first one and
// rethrow it after the loop.
struct ExceptionSlot {
    std::exception_ptr ptr;
    std::mutex mutex;

    template <typename Fn>
    void run(Fn&& fn) noexcept {
        try {
            fn();
        } catch (...) {
            const std::lock_guard<std::mutex> lock(mutex);
            if (!ptr) ptr = std::current_exception();
        }
    }
    void rethrow() const {
        if (ptr) std::rethrow_exception(ptr);
    }
};

}  // namespace mmq::detail
