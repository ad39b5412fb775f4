#include "mdgemm/kernels.hpp"

namespace mdgemm {

namespace {

template <typename T>
void ukr_impl(int mr, int nr, std::int64_t k, const T* a, const T* b, T beta,
              T* c, std::int64_t rs, std::int64_t cs, std::int64_t vm,
              std::int64_t vn) {
    T acc[kMaxUkrDim * kMaxUkrDim];

    if (beta == T(0)) {
        for (int i = 0; i < mr * nr; ++i)
            acc[i] = T(0);
    } else if (beta == T(1)) {
        for (std::int64_t j = 0; j < vn; ++j)
            for (std::int64_t i = 0; i < vm; ++i)
                acc[i * nr + j] = c[i * rs + j * cs];
    } else {
        for (std::int64_t j = 0; j < vn; ++j)
            for (std::int64_t i = 0; i < vm; ++i)
                acc[i * nr + j] = beta * c[i * rs + j * cs];
    }

    for (std::int64_t l = 0; l < k; ++l) {
        const T* al = a + l * mr;
        const T* bl = b + l * nr;
        for (std::int64_t i = 0; i < vm; ++i) {
            T ai = al[i];
            T* row = acc + i * nr;
            for (std::int64_t j = 0; j < vn; ++j)
                row[j] += ai * bl[j];
        }
    }

    for (std::int64_t j = 0; j < vn; ++j)
        for (std::int64_t i = 0; i < vm; ++i)
            c[i * rs + j * cs] = acc[i * nr + j];
}

double round_store(double v, Precision p) {
    return p == Precision::Single ? static_cast<double>(static_cast<float>(v)) : v;
}

std::complex<double> round_store(std::complex<double> v, Precision p) {
    return {round_store(v.real(), p), round_store(v.imag(), p)};
}

} // namespace

void gemm_ukr(const UkrDescriptor& d, const MicroPanelPair& panels, double beta,
              void* c, std::int64_t rs, std::int64_t cs, FlopCounter& fc,
              std::int64_t valid_m, std::int64_t valid_n) {
    const int mr = d.mr, nr = d.nr;
    if (mr < 1 || nr < 1 || mr > kMaxUkrDim || nr > kMaxUkrDim)
        throw Error("gemm_ukr: register tile dimensions out of range");
    std::int64_t vm = valid_m < 0 ? mr : valid_m;
    std::int64_t vn = valid_n < 0 ? nr : valid_n;
    if (vm > mr || vn > nr)
        throw Error("gemm_ukr: valid region exceeds the register tile");

    if (d.precision == Precision::Single)
        ukr_impl<float>(mr, nr, panels.k, reinterpret_cast<const float*>(panels.a),
                        reinterpret_cast<const float*>(panels.b),
                        static_cast<float>(beta), static_cast<float*>(c), rs, cs,
                        vm, vn);
    else
        ukr_impl<double>(mr, nr, panels.k, reinterpret_cast<const double*>(panels.a),
                         reinterpret_cast<const double*>(panels.b), beta,
                         static_cast<double*>(c), rs, cs, vm, vn);

    fc.add(2ULL * static_cast<std::uint64_t>(mr) * static_cast<std::uint64_t>(nr) *
           static_cast<std::uint64_t>(panels.k));
    if (beta != 0.0 && beta != 1.0)
        fc.add(static_cast<std::uint64_t>(mr) * static_cast<std::uint64_t>(nr));
}

void accumulate_element(const MatrixView& c, std::int64_t i, std::int64_t j,
                        Scalar beta, std::complex<double> t) {
    const Precision sp = c.dtype.precision;
    std::complex<double> tc = round_store(t, sp);
    std::complex<double> r;
    if (beta.is_zero()) {
        r = tc;
    } else if (beta.is_one()) {
        r = round_store(load_elem(c, i, j) + tc, sp);
    } else {
        std::complex<double> bc = round_store(beta.value() * load_elem(c, i, j), sp);
        r = round_store(bc + tc, sp);
    }
    if (c.dtype.domain == Domain::Real)
        r = {r.real(), 0.0};
    store_elem(c, i, j, r);
}

void virtual_ukr_temp(const UkrDescriptor& d, const MicroPanelPair& panels,
                      Scalar beta, const MatrixView& c, PairAxis pair,
                      FlopCounter& fc) {
    const int mr = d.mr, nr = d.nr;
    const std::int64_t real_rows = pair == PairAxis::Rows ? 2 * c.m : c.m;
    const std::int64_t real_cols = pair == PairAxis::Cols ? 2 * c.n : c.n;
    if (real_rows > mr || real_cols > nr)
        throw Error("virtual_ukr_temp: tile exceeds the register block");
    if (pair == PairAxis::None && c.dtype.domain != Domain::Real)
        throw Error("virtual_ukr_temp: unpaired output requires a real view");
    if (pair != PairAxis::None && c.dtype.domain != Domain::Complex)
        throw Error("virtual_ukr_temp: paired output requires a complex view");

    alignas(64) std::byte tempbuf[kMaxUkrDim * kMaxUkrDim * sizeof(double)];
    const std::int64_t trs = d.preference == Preference::Column ? 1 : nr;
    const std::int64_t tcs = d.preference == Preference::Column ? mr : 1;
    gemm_ukr(d, panels, 0.0, tempbuf, trs, tcs, fc);

    auto temp_at = [&](std::int64_t i, std::int64_t j) -> double {
        std::int64_t idx = i * trs + j * tcs;
        if (d.precision == Precision::Single)
            return reinterpret_cast<const float*>(tempbuf)[idx];
        return reinterpret_cast<const double*>(tempbuf)[idx];
    };

    for (std::int64_t j = 0; j < c.n; ++j)
        for (std::int64_t i = 0; i < c.m; ++i) {
            std::complex<double> t;
            switch (pair) {
            case PairAxis::None: t = {temp_at(i, j), 0.0}; break;
            case PairAxis::Rows: t = {temp_at(2 * i, j), temp_at(2 * i + 1, j)}; break;
            case PairAxis::Cols: t = {temp_at(i, 2 * j), temp_at(i, 2 * j + 1)}; break;
            }
            accumulate_element(c, i, j, beta, t);
        }
}

void virtual_ukr_onem(const UkrDescriptor& d, const MicroPanelPair& panels,
                    Scalar beta, const MatrixView& c, OneMVariant variant,
                    FlopCounter& fc) {
    if (c.dtype.domain != Domain::Complex)
        throw Error("virtual_ukr_onem: output tile must be complex");
    const FlattenAxis axis =
        variant == OneMVariant::Column ? FlattenAxis::Rows : FlattenAxis::Cols;
    const bool direct = beta.im == 0.0 && c.dtype.precision == d.precision &&
                        can_flatten(c, axis);
    if (direct) {
        MatrixView flat = real_flatten(c, axis);
        gemm_ukr(d, panels, beta.re, flat.base, flat.rs, flat.cs, fc, flat.m, flat.n);
        return;
    }
    virtual_ukr_temp(d, panels, beta,  c,
                     variant == OneMVariant::Column ? PairAxis::Rows : PairAxis::Cols,
                     fc);
}

} // namespace mdgemm
