#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/channel.hpp"
#include "permrm/errors.hpp"
#include "permrm/perm_decoder.hpp"
#include "permrm/rm_code.hpp"
#include "permrm/rng.hpp"
#include "permrm/scl.hpp"
#include "permrm/threshold.hpp"
#include "permrm/types.hpp"

namespace permrm {

enum class DecoderKind { perm, scl, sc };

struct SimConfig {
    int m = 8;
    int r = 3;
    DecoderKind decoder = DecoderKind::perm;
    int list_size = 1;

    bool et_branch_bound = false;
    bool et_snr_threshold = false;
    double p_target = 5e-4;
    bool et_repetition = false;
    int repeat_stop = 8;
    bool parallel_branches = false;
    double grid_step = 0.005;  // for the SNR-threshold quantile

    std::vector<double> snr_db;
    SnrConvention convention = SnrConvention::eb_n0;

    std::uint64_t min_errors = 100;
    std::uint64_t max_trials = 1000000;
    std::uint64_t gain_trials = 2000;  // fixed trials per point in run_gain_sweep
    std::uint64_t seed = 42;
    bool all_zero = false;  // transmit the all-zero codeword instead of random data
};

struct SimRecord {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t block_errors = 0;
    double bler = 0.0;
    double avg_fplus = 0.0;
    double avg_fminus = 0.0;
    double gain = 1.0;
    double threshold = std::numeric_limits<double>::quiet_NaN();  // SNR-ET quantile, if used
};

namespace detail {

inline void validate_config(const SimConfig& cfg) {
    if (cfg.snr_db.empty()) throw std::invalid_argument("simulation: SNR list is empty");
    if (cfg.list_size < 1) throw std::invalid_argument("simulation: list size must be >= 1");
    if (cfg.min_errors < 1) throw std::invalid_argument("simulation: min_errors must be >= 1");
    if (cfg.max_trials < 1) throw std::invalid_argument("simulation: max_trials must be >= 1");
    if (cfg.gain_trials < 1) throw std::invalid_argument("simulation: gain_trials must be >= 1");
    if (cfg.et_snr_threshold && !(cfg.p_target > 0.0 && cfg.p_target < 1.0))
        throw std::invalid_argument("simulation: p_target must lie in (0,1)");
    if (cfg.et_repetition && cfg.repeat_stop < 1)
        throw std::invalid_argument("simulation: repetition stop count must be >= 1");
    if (cfg.decoder != DecoderKind::perm &&
        (cfg.et_branch_bound || cfg.et_snr_threshold || cfg.et_repetition))
        throw config_error("simulation: early termination applies to the perm decoder only");
    if (cfg.decoder == DecoderKind::scl && cfg.parallel_branches)
        throw config_error("simulation: parallel branch mode applies to the perm decoder only");
    if (cfg.decoder == DecoderKind::sc && cfg.list_size != 1)
        throw std::invalid_argument("simulation: decoder 'sc' runs a single branch; list size must be 1");
}

/// One SNR point. `fixed_trials` == 0 means run to the stopping rule
/// (min_errors or max_trials), otherwise run exactly that many trials.
inline SimRecord run_point(const SimConfig& cfg, const CodeSpec& spec,
                           const std::vector<LayerPermutation>& perms, std::size_t point_idx,
                           std::uint64_t fixed_trials) {
    double rate = static_cast<double>(spec.dimension()) / static_cast<double>(spec.n());
    double snr = cfg.snr_db[point_idx];
    double sigma2 = snr_to_sigma2(snr, cfg.convention, rate);

    SimRecord rec;
    rec.snr_db = snr;

    double m_t = kNoThreshold;
    if (cfg.et_snr_threshold) {
        m_t = precise_threshold(spec.n(), ChannelNoise(sigma2), cfg.p_target, cfg.grid_step);
        rec.threshold = m_t;
    }

    EtConfig et;
    et.branch_bound = cfg.et_branch_bound;
    et.repetition = cfg.et_repetition;
    et.repeat_stop = cfg.repeat_stop;
    et.parallel = cfg.parallel_branches;

    bool use_perm = cfg.decoder != DecoderKind::scl;
    PermDecoder decoder =
        use_perm ? PermDecoder(spec, perms, m_t, et)
                 : PermDecoder(spec, {LayerPermutation::identity(spec.m)});

    int k = spec.dimension();
    BitVector info(static_cast<std::size_t>(k));
    BitVector zero_cw(static_cast<std::size_t>(spec.n()), 0);

    std::uint64_t trials = 0, errors = 0, fplus = 0, fminus = 0;
    for (;;) {
        if (fixed_trials ? trials >= fixed_trials
                         : (errors >= cfg.min_errors || trials >= cfg.max_trials))
            break;
        Rng rng(derive_stream(cfg.seed, point_idx, trials));
        const BitVector* cw = &zero_cw;
        BitVector encoded;
        if (!cfg.all_zero) {
            for (auto& b : info) b = rng.bit();
            encoded = encode(spec, scatter_info(spec, info));
            cw = &encoded;
        }
        LlrVector llrs = awgn_llrs(*cw, sigma2, rng);

        bool success;
        if (use_perm) {
            PermDecodeResult res = decoder.decode(llrs);
            success = res.decoded && res.codeword == *cw;
            fplus += res.stats.total.fplus;
            fminus += res.stats.total.fminus;
        } else {
            SclOutcome out = scl_decode(spec, llrs, cfg.list_size);
            success = out.codeword == *cw;
            fplus += out.ops.fplus;
            fminus += out.ops.fminus;
        }
        trials += 1;
        if (!success) errors += 1;
    }

    rec.trials = trials;
    rec.block_errors = errors;
    rec.bler = static_cast<double>(errors) / static_cast<double>(trials);
    rec.avg_fplus = static_cast<double>(fplus) / static_cast<double>(trials);
    rec.avg_fminus = static_cast<double>(fminus) / static_cast<double>(trials);
    if (use_perm) {
        // Full-run budget: each branch costs (n/2)*log2(n) calls of each kernel,
        // so both counters together total |perms| * n * log2(n) per decode.
        double q = static_cast<double>(perms.size()) * spec.n() * spec.m;
        rec.gain = q * static_cast<double>(trials) / static_cast<double>(fplus + fminus);
    }
    return rec;
}

inline std::vector<SimRecord> run_all(const SimConfig& cfg, std::uint64_t fixed_trials) {
    validate_config(cfg);
    CodeSpec spec = rm_code(cfg.m, cfg.r);
    std::vector<LayerPermutation> perms;
    if (cfg.decoder == DecoderKind::perm) {
        Rng perm_rng(derive_stream(cfg.seed, ~std::uint64_t{0}, 0));
        perms = sample_permutations(cfg.m, cfg.list_size, perm_rng).perms;
    } else if (cfg.decoder == DecoderKind::sc) {
        perms = {LayerPermutation::identity(cfg.m)};
    }
    std::vector<SimRecord> records;
    records.reserve(cfg.snr_db.size());
    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i)
        records.push_back(run_point(cfg, spec, perms, i, fixed_trials));
    return records;
}

} // namespace detail

/// Monte Carlo BLER: per SNR point, trials run until min_errors block errors
/// or max_trials, whichever first. Fully deterministic given the seed (each
/// trial owns a derived RNG stream).
inline std::vector<SimRecord> run_bler(const SimConfig& cfg) { return detail::run_all(cfg, 0); }

/// Early-termination gain measurement: a fixed number of trials per point so
/// counter averages carry equal weight across the sweep.
inline std::vector<SimRecord> run_gain_sweep(const SimConfig& cfg) {
    return detail::run_all(cfg, cfg.gain_trials);
}

/// Exact CSV format used by the CLI: six significant digits for the floats.
inline void write_csv(const std::vector<SimRecord>& records, std::ostream& out) {
    out << "snr_db,trials,errors,bler,avg_fplus,avg_fminus,gain\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%.6g,%llu,%llu,%.6g,%.6g,%.6g,%.6g\n", r.snr_db,
                      static_cast<unsigned long long>(r.trials),
                      static_cast<unsigned long long>(r.block_errors), r.bler, r.avg_fplus,
                      r.avg_fminus, r.gain);
        out << buf;
    }
}

} // namespace permrm
