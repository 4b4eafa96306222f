#pragma once

#include <cstddef>
#include <functional>

namespace patchnoise::parallel {

// worker cap: hardware concurrency, clamped by the PATCHNOISE_THREADS
// environment variable when set
int max_threads();

// runs f(0..n-1) on up to max_threads() workers; iterations must be
// independent and must write disjoint outputs so results cannot depend on
// scheduling
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

} // namespace patchnoise::parallel
