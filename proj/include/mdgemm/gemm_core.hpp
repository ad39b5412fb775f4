#pragma once

#include "mdgemm/dispatch.hpp"

namespace mdgemm {

// Executes the blocked loop nest of a fully resolved plan: column panels of
// NC, inner-dimension blocks of KC (beta lands on the first block only), row
// panels of MC, then register tiles of MR x NR fed by the packed buffers.
// The row-panel loop is the one loop that runs across threads; the right-hand
// block is packed cooperatively beforehand, each thread packs its own
// left-hand blocks. Intermediate-output handling lives in gemm(), which may
// point p.c at a buffer before calling this.
//
// Requires p.k > 0 (a pure beta scaling pass is the caller's job).
void gemm_blocked(const ExecutionPlan& p, FlopCounter& fc);

} // namespace mdgemm
