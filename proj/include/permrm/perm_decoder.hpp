#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/errors.hpp"
#include "permrm/permutation.hpp"
#include "permrm/rm_code.hpp"
#include "permrm/sc.hpp"
#include "permrm/types.hpp"

namespace permrm {

/// Two completed branches that found the same codeword sum the same penalty
/// terms in different orders, so their metrics can differ by rounding noise.
/// The branch-and-bound threshold sits this far below the best metric so such
/// a branch still completes (and gets counted by the repetition rule). An
/// aborted branch still has true metric strictly below the best, so pruning
/// stays exact.
constexpr double kBranchBoundSlack = 1e-9;

struct EtConfig {
    bool branch_bound = false;
    bool repetition = false;
    int repeat_stop = 8;     // branches that must agree before stopping
    bool parallel = false;   // independent branches, fixed threshold only
};

enum class StopReason { exhausted, repetition, threshold_failure };

struct PermStats {
    std::vector<OpCounters> per_branch;
    OpCounters total;
    int branches_run = 0;
    int branches_aborted = 0;
    StopReason stop_reason = StopReason::exhausted;
};

struct PermDecodeResult {
    BitVector codeword;   // empty when decoded == false
    BitVector layer0;
    double metric = kAbortedMetric;
    bool decoded = false;
    PermStats stats;
};

/// Runs one SC branch per layer permutation and keeps the best metric.
/// Construct once per (code, permutation list, threshold, ET policy) and
/// reuse across decodes; instances are not safe to share between threads.
class PermDecoder {
public:
    PermDecoder(const CodeSpec& spec, std::vector<LayerPermutation> perms,
                double metric_threshold = kNoThreshold, EtConfig et = {})
        : spec_(spec), perms_(std::move(perms)), m_t_(metric_threshold), et_(et) {
        std::size_t n = static_cast<std::size_t>(spec_.n());
        if (perms_.empty())
            throw std::invalid_argument("PermDecoder: permutation list is empty");
        if (m_t_ > 0.0)
            throw std::invalid_argument("PermDecoder: metric threshold must be <= 0");
        if (et_.repetition && et_.repeat_stop < 1)
            throw std::invalid_argument("PermDecoder: repetition stop count must be >= 1");
        if (et_.parallel && (et_.branch_bound || et_.repetition))
            throw config_error(
                "PermDecoder: parallel branch mode supports only the fixed SNR threshold; "
                "branch-and-bound and repetition need sequential branches");
        mask_ = frozen_mask(spec_);
        for (const auto& p : perms_) {
            if (p.bit_map.size() != n)
                throw std::invalid_argument("PermDecoder: permutation is over " +
                                            std::to_string(p.bit_map.size()) +
                                            " indices, code length is " + std::to_string(n));
            for (int i : spec_.frozen)
                if (!mask_[p.bit_map[static_cast<std::size_t>(i)]])
                    throw config_error(
                        "PermDecoder: frozen set is not invariant under a supplied "
                        "permutation (index " + std::to_string(i) + " leaves the set)");
        }
        ws_.ensure(spec_.n());
        branch_llrs_.resize(n);
        cw_.resize(n);
        u0_.resize(n);
        cand_cw_.resize(n);
        cand_u0_.resize(n);
    }

    const CodeSpec& spec() const { return spec_; }
    const std::vector<LayerPermutation>& perms() const { return perms_; }

    PermDecodeResult decode(const LlrVector& channel_llrs) {
        std::size_t n = static_cast<std::size_t>(spec_.n());
        if (channel_llrs.size() != n)
            throw std::invalid_argument("PermDecoder: expected " + std::to_string(n) +
                                        " LLRs, got " + std::to_string(channel_llrs.size()));

        PermDecodeResult result;
        result.stats.per_branch.reserve(perms_.size());
        double best = m_t_;  // branches must beat the initial threshold strictly
        bool repetition_stop = false;
        std::map<BitVector, int> copies;

        for (const auto& perm : perms_) {
            double thr = m_t_;
            if (et_.branch_bound) thr = std::max(thr, best - kBranchBoundSlack);

            for (std::size_t i = 0; i < n; ++i) branch_llrs_[perm.bit_map[i]] = channel_llrs[i];

            OpCounters ops;
            double metric = detail::sc_node(branch_llrs_.data(), cw_.data(), u0_.data(),
                                            mask_.data(), 0, spec_.m, thr, ws_, ops);
            if (metric < thr) metric = kAbortedMetric;
            result.stats.per_branch.push_back(ops);
            result.stats.total.fplus += ops.fplus;
            result.stats.total.fminus += ops.fminus;
            result.stats.branches_run += 1;

            if (metric == kAbortedMetric) {
                result.stats.branches_aborted += 1;
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                cand_cw_[i] = cw_[perm.bit_map[i]];
                cand_u0_[i] = u0_[perm.bit_map[i]];
            }
            if (metric > best) {  // strict: first branch wins metric ties
                best = metric;
                result.decoded = true;
                result.codeword = cand_cw_;
                result.layer0 = cand_u0_;
            }
            if (et_.repetition) {
                int seen = ++copies[cand_cw_];
                if (seen >= et_.repeat_stop && result.decoded && cand_cw_ == result.codeword) {
                    repetition_stop = true;
                    break;
                }
            }
        }

        if (result.decoded) {
            result.metric = best;
            result.stats.stop_reason =
                repetition_stop ? StopReason::repetition : StopReason::exhausted;
        } else {
            result.stats.stop_reason = StopReason::threshold_failure;
        }
        return result;
    }

private:
    CodeSpec spec_;
    std::vector<LayerPermutation> perms_;
    double m_t_;
    EtConfig et_;
    std::vector<std::uint8_t> mask_;
    detail::ScWorkspace ws_;
    LlrVector branch_llrs_;
    BitVector cw_, u0_, cand_cw_, cand_u0_;
};

/// One-shot form; see PermDecoder for the reusable object.
inline PermDecodeResult perm_decode(const CodeSpec& spec, const LlrVector& channel_llrs,
                                    const std::vector<LayerPermutation>& perms,
                                    double metric_threshold = kNoThreshold, EtConfig et = {}) {
    PermDecoder decoder(spec, perms, metric_threshold, et);
    return decoder.decode(channel_llrs);
}

} // namespace permrm
