#ifndef LIFEDIT_PARALLEL_H_
#define LIFEDIT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace lifedit {

// Number of workers used by parallel_for. Defaults to LIFEDIT_THREADS when set,
// otherwise the hardware concurrency. Never affects computed values.
int thread_count();
void set_thread_count(int count);

// Calls body(i) for i in [0, n) across thread_count() workers. If any call
// throws, the exception from the lowest failing index is rethrown after all
// workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lifedit

#endif  // LIFEDIT_PARALLEL_H_
