#include "mdgemm/gemm_core.hpp"

#include "mdgemm/packing.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <exception>
#include <span>
#include <thread>
#include <vector>

namespace mdgemm {

namespace {

// How many real-image coordinates one source element spans, per axis. The
// blocked loops walk the real computation; source sub-blocks are cut by
// dividing the real ranges back down. Block sizes and register dims are kept
// even, so the divisions are always exact.
struct SliceUnits {
    std::int64_t row_mul = 1;
    std::int64_t col_mul = 1;
};

SliceUnits units_of(PackFormat f, Side side, Domain src_domain) {
    switch (f) {
    case PackFormat::Standard:
        if (src_domain == Domain::Complex)
            return side == Side::Left ? SliceUnits{2, 1} : SliceUnits{1, 2};
        return {1, 1};
    case PackFormat::OneE:
        return {2, 2};
    case PackFormat::OneR:
        return side == Side::Left ? SliceUnits{1, 2} : SliceUnits{2, 1};
    }
    return {1, 1};
}

// Routes one register tile to its update path. (gi, gj) and the valid
// extents are in real-image coordinates; tile origins are even whenever a
// path divides by two, because MC/MR/NC/NR are even.
void run_tile(const ExecutionPlan& p, const MicroPanelPair& mp, Scalar beta_blk,
              std::int64_t gi, std::int64_t gj, std::int64_t mr_t,
              std::int64_t nr_t, FlopCounter& fc) {
    switch (p.ukr_path) {
    case UkrPath::Direct: {
        MatrixView t = slice(p.c, gi, gj, mr_t, nr_t);
        gemm_ukr(p.ukr, mp, beta_blk.re, t.base, t.rs, t.cs, fc, mr_t, nr_t);
        break;
    }
    case UkrPath::Temp: {
        const std::int64_t pr = p.pair_axis == PairAxis::Rows ? 2 : 1;
        const std::int64_t pc = p.pair_axis == PairAxis::Cols ? 2 : 1;
        MatrixView t = slice(p.c, gi / pr, gj / pc, mr_t / pr, nr_t / pc);
        virtual_ukr_temp(p.ukr, mp, beta_blk, t, p.pair_axis, fc);
        break;
    }
    case UkrPath::OneMColumn: {
        MatrixView t = slice(p.c, gi / 2, gj, mr_t / 2, nr_t);
        virtual_ukr_onem(p.ukr, mp, beta_blk, t, OneMVariant::Column, fc);
        break;
    }
    case UkrPath::OneMRow: {
        MatrixView t = slice(p.c, gi, gj / 2, mr_t, nr_t / 2);
        virtual_ukr_onem(p.ukr, mp, beta_blk, t, OneMVariant::Row, fc);
        break;
    }
    }
}

} // namespace

void gemm_blocked(const ExecutionPlan& p, FlopCounter& fc) {
    if (p.m <= 0 || p.n <= 0)
        return;
    if (p.k <= 0)
        throw Error("gemm_blocked: inner dimension must be positive");

    const std::int64_t MC = p.params.mc, NC = p.params.nc, KC = p.params.kc;
    const std::int64_t MR = p.ukr.mr, NR = p.ukr.nr;
    const int T = std::max(1, p.params.threads);

    const SliceUnits ua = units_of(p.format_a, Side::Left, p.a.dtype.domain);
    const SliceUnits ub = units_of(p.format_b, Side::Right, p.b.dtype.domain);

    // One shared right-hand block, one left-hand block per thread, each sized
    // for the widest real element. A Standard-packed complex block uses the
    // same bytes at half the panel count, so the bound holds for every format.
    std::vector<std::byte> b_arena(static_cast<std::size_t>(NC * KC) * 8);
    std::vector<std::vector<std::byte>> a_arenas(static_cast<std::size_t>(T));
    for (auto& v : a_arenas)
        v.resize(static_cast<std::size_t>(MC * KC) * 8);

    const std::int64_t m_panels = (p.m + MC - 1) / MC;
    const Scalar unit_beta = Scalar::real_value(1.0, p.beta.dtype.precision);

    std::vector<FlopCounter> fcs(static_cast<std::size_t>(T));
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(T));
    std::atomic<bool> failed{false};
    std::barrier sync(T);

    // Every thread walks the same jc/pc schedule and hits the same two
    // barriers per block, even after a failure (work is skipped, the loop
    // shape is preserved), so nobody can strand the others mid-phase.
    auto worker = [&](int tid) {
        FlopCounter& tfc = fcs[static_cast<std::size_t>(tid)];
        std::span<std::byte> bspan(b_arena.data(), b_arena.size());
        auto& a_arena = a_arenas[static_cast<std::size_t>(tid)];
        std::span<std::byte> aspan(a_arena.data(), a_arena.size());

        auto guard = [&](auto&& step) {
            if (failed.load(std::memory_order_relaxed))
                return;
            try {
                step();
            } catch (...) {
                errs[static_cast<std::size_t>(tid)] = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        };

        for (std::int64_t jc = 0; jc < p.n; jc += NC) {
            const std::int64_t nb = std::min(NC, p.n - jc);
            for (std::int64_t pc = 0; pc < p.k; pc += KC) {
                const std::int64_t kb = std::min(KC, p.k - pc);
                const Scalar beta_blk = pc == 0 ? p.beta : unit_beta;

                PackedBlock bblk;
                guard([&] {
                    MatrixView bsrc = slice(p.b, pc / ub.row_mul, jc / ub.col_mul,
                                            kb / ub.row_mul, nb / ub.col_mul);
                    const std::int64_t bpanels = (nb + NR - 1) / NR;
                    const std::int64_t chunk = (bpanels + T - 1) / T;
                    bblk = pack_block_panels(bspan, bsrc, Side::Right, p.format_b,
                                             p.conj_b, p.pack_scale_b,
                                             p.target_dtype_b, p.reg_block_b,
                                             tid * chunk, (tid + 1) * chunk);
                });
                if (T > 1)
                    sync.arrive_and_wait();

                guard([&] {
                    for (std::int64_t ip = tid; ip < m_panels; ip += T) {
                        const std::int64_t ic = ip * MC;
                        const std::int64_t mb = std::min(MC, p.m - ic);
                        MatrixView asrc = slice(p.a, ic / ua.row_mul, pc / ua.col_mul,
                                                mb / ua.row_mul, kb / ua.col_mul);
                        PackedBlock ablk = pack_block_into(
                            aspan, asrc, Side::Left, p.format_a, p.conj_a,
                            p.pack_scale_a, p.target_dtype_a, p.reg_block_a);
                        for (std::int64_t jr = 0; jr < nb; jr += NR) {
                            const std::int64_t nr_t = std::min(NR, nb - jr);
                            for (std::int64_t ir = 0; ir < mb; ir += MR) {
                                const std::int64_t mr_t = std::min(MR, mb - ir);
                                MicroPanelPair mp{ablk.panel_ptr(ir / MR),
                                                  bblk.panel_ptr(jr / NR), kb};
                                run_tile(p, mp, beta_blk, ic + ir, jc + jr,
                                         mr_t, nr_t, tfc);
                            }
                        }
                    }
                });
                if (T > 1)
                    sync.arrive_and_wait();
            }
        }
    };

    if (T == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(T - 1));
        for (int t = 1; t < T; ++t)
            pool.emplace_back(worker, t);
        worker(0);
    }

    for (const auto& e : errs)
        if (e)
            std::rethrow_exception(e);
    for (const auto& c : fcs)
        fc.merge(c);
}

} // namespace mdgemm
