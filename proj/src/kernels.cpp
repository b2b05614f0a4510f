#include "sca/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "sca/errors.hpp"

namespace sca::kernels {

const Ops& scalar_ops();
const Ops* avx2_ops();

bool cpu_has_avx2() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

const Ops* initial_table() {
    if (const char* env = std::getenv("SCA_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2() && avx2_ops()) return avx2_ops();
    }
    if (cpu_has_avx2() && avx2_ops()) return avx2_ops();
    return &scalar_ops();
}

std::atomic<const Ops*>& active_slot() {
    static std::atomic<const Ops*> slot{initial_table()};
    return slot;
}

}  // namespace

const Ops& ops(Isa isa) {
    if (isa == Isa::scalar) return scalar_ops();
    const Ops* t = cpu_has_avx2() ? avx2_ops() : nullptr;
    if (!t) throw DomainError("avx2 kernels unavailable on this host");
    return *t;
}

const Ops& active() { return *active_slot().load(std::memory_order_relaxed); }

void select(Isa isa) { active_slot().store(&ops(isa), std::memory_order_relaxed); }

std::string active_name() {
    return active_slot().load(std::memory_order_relaxed) == &scalar_ops() ? "scalar" : "avx2";
}

}  // namespace sca::kernels
