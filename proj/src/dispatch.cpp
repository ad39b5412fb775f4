#include "mdgemm/dispatch.hpp"

#include "mdgemm/gemm_core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mdgemm {

CaseId classify_case(Domain c, Domain a, Domain b) {
    const bool cc = c == Domain::Complex;
    const bool ca = a == Domain::Complex;
    const bool cb = b == Domain::Complex;
    if (!cc) {
        if (ca && cb)
            return CaseId::C2ab;
        if (ca)
            return CaseId::C1a;
        if (cb)
            return CaseId::C1b;
        return CaseId::C0;
    }
    if (ca && cb)
        return CaseId::C3;
    if (ca)
        return CaseId::C2ac;
    if (cb)
        return CaseId::C2bc;
    return CaseId::C1c;
}

Precision resolve_comp_precision(const MatrixView& c) { return c.comp_prec; }

std::uint64_t flops_of_case(CaseId case_id, std::int64_t m, std::int64_t n,
                            std::int64_t k) {
    const std::uint64_t mnk = static_cast<std::uint64_t>(m) *
                              static_cast<std::uint64_t>(n) *
                              static_cast<std::uint64_t>(k);
    switch (case_id) {
    case CaseId::C0:
    case CaseId::C1a:
    case CaseId::C1b:
    case CaseId::C1c:
        return 2 * mnk;
    case CaseId::C2ab:
    case CaseId::C2ac:
    case CaseId::C2bc:
        return 4 * mnk;
    case CaseId::C3:
        return 8 * mnk;
    }
    return 0;
}

std::pair<Scalar, Scalar> apply_scalar_policy(Scalar alpha, Scalar beta,
                                              CaseId case_id, Precision comp_prec,
                                              Precision c_storage_prec) {
    Scalar ae;
    switch (case_id) {
    case CaseId::C0:
        // All-real operation: a complex alpha degenerates to its real part.
        ae = project_scalar(alpha, comp_prec);
        break;
    case CaseId::C3:
        ae = typecast_scalar(alpha, Datatype{alpha.dtype.domain, comp_prec});
        break;
    default:
        if (alpha.im != 0.0)
            throw ScalarPolicyError(std::string("case ") + to_string(case_id) +
                                    " does not support alpha with a nonzero "
                                    "imaginary part");
        ae = project_scalar(alpha, comp_prec);
        break;
    }

    const bool beta_real = case_id == CaseId::C0 || case_id == CaseId::C1a ||
                           case_id == CaseId::C1b || case_id == CaseId::C1c ||
                           case_id == CaseId::C2ab;
    Scalar be = beta_real
                    ? project_scalar(beta, c_storage_prec)
                    : typecast_scalar(beta, Datatype{beta.dtype.domain,
                                                     c_storage_prec});
    return {ae, be};
}

namespace {

CaseId mirror_case(CaseId id) {
    switch (id) {
    case CaseId::C1a:
        return CaseId::C1b;
    case CaseId::C1b:
        return CaseId::C1a;
    case CaseId::C2ac:
        return CaseId::C2bc;
    case CaseId::C2bc:
        return CaseId::C2ac;
    default:
        return id;
    }
}

} // namespace

ExecutionPlan plan(Scalar alpha, const MatrixView& a, const MatrixView& b,
                   Scalar beta, const MatrixView& c, const Config& cfg) {
    cfg.validate();
    if (a.m != c.m || b.n != c.n || a.n != b.m)
        throw Error("gemm: dimension mismatch: C is " + std::to_string(c.m) +
                    "x" + std::to_string(c.n) + ", A is " + std::to_string(a.m) +
                    "x" + std::to_string(a.n) + ", B is " + std::to_string(b.m) +
                    "x" + std::to_string(b.n));

    const Precision comp = resolve_comp_precision(c);
    const CaseId case_in = classify_case(c.dtype.domain, a.dtype.domain,
                                         b.dtype.domain);
    auto [alpha_e, beta_e] =
        apply_scalar_policy(alpha, beta, case_in, comp, c.dtype.precision);

    const Preference pref = cfg.preference;

    // Operation transposition: compute C' = B' A' when that turns the output
    // into the microkernel's preferred orientation (or, for the two
    // half-complex output cases, into the variant the preference can run).
    bool flip = false;
    switch (case_in) {
    case CaseId::C2ac:
        flip = pref == Preference::Row;
        break;
    case CaseId::C2bc:
        flip = pref == Preference::Column;
        break;
    case CaseId::C1c:
        flip = false;
        break;
    default: {
        const StorageKind sk = storage_kind(c);
        flip = (pref == Preference::Column && sk == StorageKind::RowStored) ||
               (pref == Preference::Row && sk == StorageKind::ColumnStored);
        break;
    }
    }

    MatrixView A = flip ? induced_transpose(b) : a;
    MatrixView B = flip ? induced_transpose(a) : b;
    MatrixView C = flip ? induced_transpose(c) : c;
    const CaseId case_id = flip ? mirror_case(case_in) : case_in;

    const std::int64_t m = C.m, n = C.n, k = A.n;

    ExecutionPlan p;
    p.case_id = case_id;
    p.logical_transpose = flip;
    p.comp_prec = comp;
    p.params = cfg.blocking(comp);
    p.ukr = cfg.ukr(comp);
    p.alpha = alpha_e;
    p.beta = beta_e;

    MatrixView ea = A, eb = B, ec = C;
    PackFormat fa = PackFormat::Standard, fb = PackFormat::Standard;
    bool extra_conj_b = false;
    PairAxis pair = PairAxis::None;
    std::int64_t me = m, ne = n, ke = k;

    switch (case_id) {
    case CaseId::C0:
        break;
    case CaseId::C1a:
        ea = real_projection(A, Part::Re);
        break;
    case CaseId::C1b:
        eb = real_projection(B, Part::Re);
        break;
    case CaseId::C1c:
        ec = real_projection(C, Part::Re);
        break;
    case CaseId::C2ab:
        // Re(A B): both operands contribute their components along the inner
        // dimension; conjugating B makes the im*im products enter with the
        // sign the real part of the product needs.
        fa = PackFormat::OneR;
        fb = PackFormat::OneR;
        extra_conj_b = true;
        ke = 2 * k;
        break;
    case CaseId::C2ac:
        // A's components interleave into 2m real rows; B is real.
        pair = PairAxis::Rows;
        me = 2 * m;
        break;
    case CaseId::C2bc:
        pair = PairAxis::Cols;
        ne = 2 * n;
        break;
    case CaseId::C3:
        if (pref == Preference::Column) {
            fa = PackFormat::OneE;
            fb = PackFormat::OneR;
            pair = PairAxis::Rows;
            me = 2 * m;
        } else {
            fa = PackFormat::OneR;
            fb = PackFormat::OneE;
            pair = PairAxis::Cols;
            ne = 2 * n;
        }
        ke = 2 * k;
        break;
    }

    p.format_a = fa;
    p.format_b = fb;
    p.conj_a = false;
    p.conj_b = extra_conj_b;
    p.target_dtype_a = Datatype{ea.dtype.domain, comp};
    p.target_dtype_b = Datatype{eb.dtype.domain, comp};
    p.reg_block_a = (fa == PackFormat::Standard && ea.dtype.domain == Domain::Complex)
                        ? p.ukr.mr / 2
                        : p.ukr.mr;
    p.reg_block_b = (fb == PackFormat::Standard && eb.dtype.domain == Domain::Complex)
                        ? p.ukr.nr / 2
                        : p.ukr.nr;

    // Alpha rides along with exactly one packed operand; the expanding format
    // absorbs a complex alpha, so for the fully complex case it follows the
    // 2x2-block side.
    const Scalar unit = Scalar::real_value(1.0, comp);
    p.pack_scale_a = unit;
    p.pack_scale_b = unit;
    if (case_id == CaseId::C3 && pref == Preference::Row)
        p.pack_scale_b = alpha_e;
    else
        p.pack_scale_a = alpha_e;

    p.macro_mode = comp != c.dtype.precision ? MacroMode::AccumulateTypecast
                                             : MacroMode::Standard;

    // Output path. The first match wins: the fully complex case always runs
    // the paired-kernel update; a computation/storage precision gap forces
    // the combine through a tile in computation precision; the half-complex
    // output cases write straight to the flattened real image when its unit
    // stride exists and beta is real.
    bool flatten_ok = false;
    UkrPath path = UkrPath::Direct;
    if (case_id == CaseId::C3) {
        path = pref == Preference::Column ? UkrPath::OneMColumn : UkrPath::OneMRow;
    } else if (p.macro_mode == MacroMode::AccumulateTypecast) {
        path = UkrPath::Temp;
    } else if (case_id == CaseId::C1c) {
        // The real image of C is stride-2 along both axes; update through the
        // tile path rather than asking the real kernel to write it.
        path = UkrPath::Temp;
    } else if (case_id == CaseId::C2ac || case_id == CaseId::C2bc) {
        const FlattenAxis ax =
            case_id == CaseId::C2ac ? FlattenAxis::Rows : FlattenAxis::Cols;
        flatten_ok = can_flatten(ec, ax);
        if (flatten_ok && beta_e.im == 0.0) {
            ec = real_flatten(ec, ax);
            pair = PairAxis::None;
            path = UkrPath::Direct;
        } else {
            path = UkrPath::Temp;
        }
    }

    // Intermediate real output buffer: engaged when the direct write is
    // blocked by a precision gap, by an unreachable real image, or by a
    // multi-block inner dimension updating a strided real image. Off/On force
    // it; Auto additionally keeps the main loops single-threaded-only since
    // the write-back pass is sequential.
    const bool trigger_cast = p.macro_mode == MacroMode::AccumulateTypecast;
    const bool trigger_strided = case_id == CaseId::C1c && k > p.params.kc;
    bool trigger_orient = false;
    if ((case_id == CaseId::C2ac || case_id == CaseId::C2bc) && !flatten_ok)
        trigger_orient = true;
    if (case_id == CaseId::C3) {
        const FlattenAxis ax3 = pref == Preference::Column ? FlattenAxis::Rows
                                                           : FlattenAxis::Cols;
        trigger_orient = !can_flatten(ec, ax3);
    }
    const bool trigger = trigger_cast || trigger_strided || trigger_orient;
    const bool engaged = cfg.ctemp != CTempMode::Off && trigger &&
                         (cfg.ctemp == CTempMode::On || p.params.threads == 1);
    if (engaged) {
        CTempDescriptor ct;
        ct.rows = me;
        ct.cols = ne;
        ct.precision = comp;
        ct.mode = beta_e.is_zero() ? CTempDescriptor::Mode::CopyBack
                                   : CTempDescriptor::Mode::AccumulateBack;
        p.ctemp = ct;
    }

    p.a = ea;
    p.b = eb;
    p.c = ec;
    p.m = me;
    p.n = ne;
    p.k = ke;
    p.ukr_path = path;
    p.pair_axis = pair;
    return p;
}

namespace {

// C := beta * C over the effective output view; used when the inner
// dimension is empty. beta = 1 touches nothing, beta = 0 reads nothing.
void beta_pass(const MatrixView& out, Scalar beta) {
    if (beta.re == 1.0 && beta.im == 0.0)
        return;
    for (std::int64_t j = 0; j < out.n; ++j)
        for (std::int64_t i = 0; i < out.m; ++i)
            accumulate_element(out, i, j, beta, {0.0, 0.0});
}

double read_real(const MatrixView& v, std::int64_t i, std::int64_t j) {
    return load_elem(v, i, j).real();
}

// Folds the buffered real image back into the effective output view,
// sequentially, pairing rows or columns into complex elements as the case
// demands. Runs through the shared combine step so the result agrees bitwise
// with the tile path whenever the accumulated sums agree.
void write_back(const ExecutionPlan& p, const MatrixView& buf) {
    const MatrixView& out = p.c;
    for (std::int64_t j = 0; j < out.n; ++j) {
        for (std::int64_t i = 0; i < out.m; ++i) {
            std::complex<double> t;
            switch (p.pair_axis) {
            case PairAxis::None:
                t = {read_real(buf, i, j), 0.0};
                break;
            case PairAxis::Rows:
                t = {read_real(buf, 2 * i, j), read_real(buf, 2 * i + 1, j)};
                break;
            case PairAxis::Cols:
                t = {read_real(buf, i, 2 * j), read_real(buf, i, 2 * j + 1)};
                break;
            }
            accumulate_element(out, i, j, p.beta, t);
        }
    }
}

} // namespace

void gemm(Scalar alpha, const MatrixView& a, const MatrixView& b, Scalar beta,
          const MatrixView& c, const Config& cfg, FlopCounter* fc) {
    if (ranges_overlap(c, a) || ranges_overlap(c, b))
        throw Error("gemm: C must not alias A or B");

    ExecutionPlan p = plan(alpha, a, b, beta, c, cfg);
    FlopCounter local;
    FlopCounter& counter = fc ? *fc : local;

    if (p.m == 0 || p.n == 0)
        return;
    if (p.k == 0) {
        beta_pass(p.c, p.beta);
        return;
    }

    if (p.ctemp) {
        const CTempDescriptor& ct = *p.ctemp;
        const Datatype bt{Domain::Real, ct.precision};
        std::vector<std::byte> storage(
            static_cast<std::size_t>(ct.rows * ct.cols) * real_size(ct.precision),
            std::byte{0});
        const MatrixView bv =
            p.ukr.preference == Preference::Column
                ? MatrixView::make(storage.data(), ct.rows, ct.cols, 1, ct.rows, bt)
                : MatrixView::make(storage.data(), ct.rows, ct.cols, ct.cols, 1, bt);

        ExecutionPlan inner = p;
        inner.c = bv;
        inner.ukr_path = UkrPath::Direct;
        inner.pair_axis = PairAxis::None;
        inner.macro_mode = MacroMode::Standard;
        inner.beta = Scalar::real_value(0.0, ct.precision);
        inner.ctemp.reset();
        gemm_blocked(inner, counter);
        write_back(p, bv);
    } else {
        gemm_blocked(p, counter);
    }
}

} // namespace mdgemm
