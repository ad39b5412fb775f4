#pragma once

#include "mdgemm/kernels.hpp"

#include <optional>
#include <string>

namespace mdgemm {

// Cache blocking for one computation precision. mc must be a multiple of mr
// and nc of nr so packed panels tile exactly; all dimensions are kept even so
// complex element pairs never straddle a block boundary.
struct BlockingParams {
    std::int64_t mc = 0;
    std::int64_t nc = 0;
    std::int64_t kc = 0;
    int mr = 0;
    int nr = 0;
    int threads = 1;
};

enum class CTempMode : std::uint8_t { Auto, On, Off };

// Runtime configuration. Defaults follow the shipped generic kernels; every
// field can be overridden by a key=value file (path in $MDGEMM_CONFIG unless
// given explicitly) and then by MDGEMM_* environment variables.
//
//   gemm.mc / gemm.nc / gemm.kc   cache blocks, both precisions at once
//   gemm.mc.single / gemm.mc.double   (likewise .nc/.kc) per precision
//   gemm.threads                  worker threads for the row-panel loop
//   ukr.mr / ukr.nr               register tile, both precisions
//   ukr.mr.single / ukr.mr.double (likewise .nr) per precision
//   ukr.preference                column | row
//   ctemp.enable                  auto | on | off
//
// Environment variable names are the keys uppercased with dots replaced by
// underscores and an MDGEMM_ prefix (e.g. MDGEMM_GEMM_KC,
// MDGEMM_UKR_PREFERENCE).
struct Config {
    BlockingParams single_params{128, 1024, 256, 8, 8, 1};
    BlockingParams double_params{64, 512, 128, 4, 4, 1};
    int threads = 1;
    Preference preference = Preference::Column;
    CTempMode ctemp = CTempMode::Auto;

    static Config defaults() { return Config{}; }

    // defaults -> optional file -> environment. Pass a path to skip the
    // $MDGEMM_CONFIG lookup; pass apply_env = false to ignore MDGEMM_* vars.
    static Config load(const std::optional<std::string>& file = std::nullopt,
                       bool apply_env = true);

    // Applies one "key=value" assignment. Throws on unknown keys or values.
    void set(const std::string& key, const std::string& value);

    // Validates multiples/evenness/ranges; called by load, and by gemm on
    // hand-built configs.
    void validate() const;

    BlockingParams blocking(Precision p) const {
        BlockingParams bp = p == Precision::Single ? single_params : double_params;
        bp.threads = threads;
        return bp;
    }

    UkrDescriptor ukr(Precision p) const {
        const BlockingParams& bp = p == Precision::Single ? single_params : double_params;
        return UkrDescriptor{p, bp.mr, bp.nr, preference};
    }

    std::string describe() const;
};

} // namespace mdgemm
