#pragma once

namespace cubicprng {

/// Serial runs are the reference; Parallel splits independent work items
/// (seeds, members, tests) across OpenMP threads and must produce identical
/// results.
enum class Execution { Serial, Parallel };

}  // namespace cubicprng
